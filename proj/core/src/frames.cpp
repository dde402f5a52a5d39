#include "pcmq/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pcmq {

UnitNormFrame::UnitNormFrame(std::size_t dim, std::vector<double> vectors)
    : dim_(dim), count_(0), data_(std::move(vectors)), tightness_defect_(0.0) {
  if (dim_ < 2) throw std::invalid_argument("UnitNormFrame: dim must be >= 2");
  if (data_.size() % dim_ != 0) throw std::invalid_argument("UnitNormFrame: data size not a multiple of dim");
  count_ = data_.size() / dim_;
  if (count_ < dim_) throw std::invalid_argument("UnitNormFrame: need at least dim vectors");

  std::vector<double> op(dim_ * dim_, 0.0);
  for (std::size_t j = 0; j < count_; ++j) {
    const auto e = vector(j);
    double sq = 0.0;
    for (double v : e) sq += v * v;
    if (std::abs(std::sqrt(sq) - 1.0) > 1e-12) throw std::invalid_argument("UnitNormFrame: vector is not unit norm");
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b) op[a * dim_ + b] += e[a] * e[b];
  }
  const double scale = static_cast<double>(dim_) / static_cast<double>(count_);
  double fro = 0.0;
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = 0; b < dim_; ++b) {
      const double v = scale * op[a * dim_ + b] - (a == b ? 1.0 : 0.0);
      fro += v * v;
    }
  tightness_defect_ = std::sqrt(fro);
}

UnitNormFrame harmonic_frame_2d(std::size_t N) {
  if (N < 3) throw std::invalid_argument("harmonic_frame_2d: N must be >= 3");
  std::vector<double> v;
  v.reserve(2 * N);
  for (std::size_t j = 0; j < N; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(N);
    v.push_back(std::cos(t));
    v.push_back(std::sin(t));
  }
  return UnitNormFrame(2, std::move(v));
}

UnitNormFrame random_sphere_frame(std::size_t d, std::size_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v;
  v.reserve(d * N);
  std::vector<double> g(d);
  for (std::size_t j = 0; j < N; ++j) {
    double sq = 0.0;
    do {
      sq = 0.0;
      for (auto& x : g) {
        x = gauss(rng);
        sq += x * x;
      }
    } while (sq == 0.0);
    const double inv = 1.0 / std::sqrt(sq);
    for (double x : g) v.push_back(x * inv);
  }
  return UnitNormFrame(d, std::move(v));
}

UnitNormFrame fibonacci_sphere_frame(std::size_t N) {
  if (N < 3) throw std::invalid_argument("fibonacci_sphere_frame: N must be >= 3");
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<double> v;
  v.reserve(3 * N);
  for (std::size_t j = 0; j < N; ++j) {
    const double z = 1.0 - (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(N);
    const double rho = std::sqrt((1.0 - z) * (1.0 + z));
    const double phi = golden_angle * static_cast<double>(j);
    v.push_back(rho * std::cos(phi));
    v.push_back(rho * std::sin(phi));
    v.push_back(z);
  }
  return UnitNormFrame(3, std::move(v));
}

double sphere_moment(std::span<const int> beta) {
  const double d = static_cast<double>(beta.size());
  double total = 0.0;
  double log_num = 0.0;
  for (int b : beta) {
    if (b < 0) throw std::invalid_argument("sphere_moment: negative exponent");
    if (b % 2 != 0) return 0.0;
    total += b;
    log_num += std::lgamma((b + 1) / 2.0);
  }
  const double log_norm = std::lgamma(d / 2.0) - (d / 2.0) * std::log(std::numbers::pi);
  return std::exp(log_num + log_norm - std::lgamma((total + d) / 2.0));
}

namespace {

// Enumerates exponent vectors with |beta| == degree.
template <class F>
void for_each_monomial(std::vector<int>& beta, std::size_t pos, int remaining, F&& f) {
  if (pos + 1 == beta.size()) {
    beta[pos] = remaining;
    f(beta);
    return;
  }
  for (int b = remaining; b >= 0; --b) {
    beta[pos] = b;
    for_each_monomial(beta, pos + 1, remaining - b, f);
  }
}

}  // namespace

double equidistribution_diagnostic(const UnitNormFrame& frame, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("equidistribution_diagnostic: max_degree must be >= 1");
  const std::size_t d = frame.dim();
  const double inv_n = 1.0 / static_cast<double>(frame.count());
  double worst = 0.0;
  std::vector<int> beta(d, 0);
  for (int deg = 1; deg <= max_degree; ++deg) {
    for_each_monomial(beta, 0, deg, [&](const std::vector<int>& b) {
      double avg = 0.0;
      for (std::size_t j = 0; j < frame.count(); ++j) {
        const auto e = frame.vector(j);
        double m = 1.0;
        for (std::size_t i = 0; i < d; ++i)
          for (int k = 0; k < b[i]; ++k) m *= e[i];
        avg += m;
      }
      worst = std::max(worst, std::abs(avg * inv_n - sphere_moment(b)));
    });
  }
  return worst;
}

}  // namespace pcmq
