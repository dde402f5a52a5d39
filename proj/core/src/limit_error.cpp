#include "pcmq/limit_error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pcmq/quadrature.hpp"
#include "pcmq/special_fn.hpp"

namespace pcmq {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kU = 0x1p-53;

void check_args(double r, double delta, int n, double tol) {
  if (!(r > 0.0)) throw std::invalid_argument("sawtooth integral: r must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("sawtooth integral: delta must be positive");
  if (n < 1) throw std::invalid_argument("sawtooth integral: n must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("sawtooth integral: tol must be positive");
}

// arccos((k + 1/2)/R) without the cancellation of acos near +-1.
double breakpoint_angle(long k, double R) {
  const double h = static_cast<double>(k) + 0.5;
  const double c = h / R;
  if (c > 0.5) return 2.0 * std::asin(std::sqrt(std::max(0.0, (R - h) / (2.0 * R))));
  if (c < -0.5) return kPi - 2.0 * std::asin(std::sqrt(std::max(0.0, (R + h) / (2.0 * R))));
  return std::acos(c);
}

double int_pow(double b, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

std::string_view to_string(LimitMethod m) {
  switch (m) {
    case LimitMethod::Quadrature:
      return "quadrature";
    case LimitMethod::BesselSeries:
      return "series";
    case LimitMethod::MonteCarlo:
      return "mc";
  }
  return "unknown";
}

LimitMethod parse_limit_method(std::string_view s) {
  if (s == "quadrature" || s == "quad") return LimitMethod::Quadrature;
  if (s == "series" || s == "bessel" || s == "bessel_series") return LimitMethod::BesselSeries;
  if (s == "mc" || s == "monte_carlo" || s == "montecarlo") return LimitMethod::MonteCarlo;
  throw std::invalid_argument("unknown limit method: " + std::string(s));
}

IntegralEstimate sawtooth_moment_quadrature(double r, double delta, int power, double tol) {
  if (!(r > 0.0) || !(delta > 0.0) || power < 0 || !(tol > 0.0)) {
    throw std::invalid_argument("sawtooth_moment_quadrature: bad arguments");
  }
  // Delta(r cos t) = delta * (R cos t - q) with q constant between breakpoints
  // cos t = (k + 1/2)/R.
  const double R = r / delta;
  const long k_hi = static_cast<long>(std::floor(R - 0.5));
  const long k_lo = static_cast<long>(std::ceil(-R - 0.5));

  IntegralEstimate out;
  double sum = 0.0;
  double comp = 0.0;
  double err = 0.0;
  auto piece = [&](double a, double b, double q) {
    if (!(b > a)) return;
    const auto f = [&](double t) {
      const double c = std::cos(t);
      return (R * c - q) * c * int_pow(std::sin(t), power);
    };
    // R cos t - q cancels to O(1) from O(R): evaluation noise is ~u R.
    const double noise = 16.0 * kU * (R + 1.0) * (b - a);
    const auto res = quad::integrate(f, a, b, std::max(tol * (b - a) / kPi / delta, noise), 3);
    const double t = sum + res.value;
    comp += std::abs(sum) >= std::abs(res.value) ? (sum - t) + res.value : (res.value - t) + sum;
    sum = t;
    err += res.error;
  };

  double left = 0.0;
  double q = static_cast<double>(k_hi) + 1.0;
  for (long k = k_hi; k >= k_lo; --k) {
    const double theta = breakpoint_angle(k, R);
    piece(left, theta, q);
    left = std::max(left, theta);
    q = static_cast<double>(k);
    ++out.breakpoints;
  }
  piece(left, kPi, q);

  out.value = delta * (sum + comp);
  out.error_estimate = delta * (err + 16.0 * kU * (R + 1.0) * kPi);
  return out;
}

double small_signal_moment(double r, int power) {
  const double p = static_cast<double>(power);
  return r * std::exp(std::lgamma((p + 1.0) / 2.0) + std::lgamma(1.5) - std::lgamma((p + 4.0) / 2.0));
}

IntegralEstimate integral_even(double r, double delta, int n, LimitMethod method, double tol) {
  check_args(r, delta, n, tol);
  if (method == LimitMethod::Quadrature) return sawtooth_moment_quadrature(r, delta, 2 * n - 2, tol);
  if (method != LimitMethod::BesselSeries) throw std::invalid_argument("integral_even: unsupported method");

  // -(1/pi^n)(delta^n / r^{n-1}) (pi / 2^{2n-2}) C(2n-2, n-1) (n-1)!  *  sum_k (-1)^k k^{-n} J_n(2 k pi R)
  const double nn = static_cast<double>(n);
  const double log_binom = log_factorial(2 * n - 2) - 2.0 * log_factorial(n - 1);
  const double coeff = std::exp(log_binom + log_factorial(n - 1) - (2.0 * nn - 2.0) * std::log(2.0) -
                                (nn - 1.0) * std::log(kPi));
  const double prefactor = coeff * delta * std::pow(delta / r, nn - 1.0);
  const auto s = special::alternating_bessel_sum(nn, nn, r / delta, tol / prefactor);
  IntegralEstimate out;
  out.value = -prefactor * s.value;
  out.error_estimate = prefactor * s.abs_error_bound + 8.0 * kU * std::abs(out.value);
  out.terms = s.terms;
  return out;
}

IntegralEstimate integral_odd(double r, double delta, int n, LimitMethod method, double tol) {
  check_args(r, delta, n, tol);
  if (method == LimitMethod::Quadrature) return sawtooth_moment_quadrature(r, delta, 2 * n - 1, tol);
  if (method != LimitMethod::BesselSeries) throw std::invalid_argument("integral_odd: unsupported method");

  // -((n-1)!/pi^n) (delta^{n+1/2} / r^{n-1/2})  *  sum_k (-1)^k k^{-(n+1/2)} J_{n+1/2}(2 k pi R)
  const double nn = static_cast<double>(n);
  const double coeff = std::exp(log_factorial(n - 1) - nn * std::log(kPi));
  const double prefactor = coeff * delta * std::pow(delta / r, nn - 0.5);
  const auto s = special::alternating_bessel_sum(nn + 0.5, nn + 0.5, r / delta, tol / prefactor);
  IntegralEstimate out;
  out.value = -prefactor * s.value;
  out.error_estimate = prefactor * s.abs_error_bound + 8.0 * kU * std::abs(out.value);
  out.terms = s.terms;
  return out;
}

double angular_constant(int d) {
  if (d < 2) throw std::invalid_argument("angular_constant: d must be >= 2");
  const double dd = static_cast<double>(d);
  // |S^{k-1}| = 2 pi^{k/2} / Gamma(k/2)
  return std::exp(std::lgamma(dd / 2.0) - std::lgamma((dd - 1.0) / 2.0)) / std::sqrt(kPi);
}

LimitErrorResult limiting_error(const SignalSpec& x, const QuantScheme& scheme, LimitMethod method,
                                const LimitOptions& opts) {
  const int d = static_cast<int>(x.dim());
  if (d < 2) throw std::invalid_argument("limiting_error: dimension must be >= 2");
  if (method == LimitMethod::MonteCarlo) {
    return monte_carlo_limit(x, scheme, opts.mc_samples, opts.seed, opts.mc_batches);
  }
  LimitErrorResult out;
  out.method = method;
  if (x.r == 0.0) return out;

  const int n = d / 2;
  const IntegralEstimate est = (d % 2 == 0) ? integral_even(x.r, scheme.delta(), n, method, opts.tol)
                                            : integral_odd(x.r, scheme.delta(), n, method, opts.tol);
  const double scale = static_cast<double>(d) * angular_constant(d);
  out.value = scale * std::abs(est.value);
  out.error_estimate = scale * est.error_estimate;
  out.breakpoint_count = est.breakpoints;
  out.truncation_K = est.terms;
  return out;
}

LimitErrorResult monte_carlo_limit(const SignalSpec& x, const QuantScheme& scheme, std::size_t samples,
                                   std::uint64_t seed, std::size_t batches) {
  const std::size_t d = x.dim();
  if (d < 2) throw std::invalid_argument("monte_carlo_limit: dimension must be >= 2");
  if (samples < 1000) throw std::invalid_argument("monte_carlo_limit: need at least 1000 samples");
  if (batches < 1 || batches > samples) throw std::invalid_argument("monte_carlo_limit: bad batch count");

  std::vector<double> sum(d, 0.0);
  std::vector<double> sum_sq(d, 0.0);
  std::vector<double> z(d);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t count = samples / batches + (b < samples % batches ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> bs(d, 0.0);
    std::vector<double> bss(d, 0.0);
    for (std::size_t s = 0; s < count; ++s) {
      double sq = 0.0;
      do {
        sq = 0.0;
        for (auto& v : z) {
          v = gauss(rng);
          sq += v * v;
        }
      } while (sq == 0.0);
      const double inv = 1.0 / std::sqrt(sq);
      double t = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        z[i] *= inv;
        t += x.x[i] * z[i];
      }
      const double e = quant_error(t, scheme);
      for (std::size_t i = 0; i < d; ++i) {
        const double v = e * z[i];
        bs[i] += v;
        bss[i] += v * v;
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      sum[i] += bs[i];
      sum_sq[i] += bss[i];
    }
  }

  const double S = static_cast<double>(samples);
  const double dd = static_cast<double>(d);
  double norm_sq = 0.0;
  std::vector<double> mean(d);
  std::vector<double> se_sq(d);
  for (std::size_t i = 0; i < d; ++i) {
    mean[i] = sum[i] / S;
    norm_sq += mean[i] * mean[i];
    const double var = std::max(0.0, (sum_sq[i] / S - mean[i] * mean[i]) * S / (S - 1.0));
    se_sq[i] = var / S;
  }
  // | ||m_hat|| - ||m|| | <= ||m_hat - m||, whose size is sqrt(sum se_i^2).
  double noise_sq = 0.0;
  for (double v : se_sq) noise_sq += v;
  const double norm = std::sqrt(norm_sq);

  LimitErrorResult out;
  out.method = LimitMethod::MonteCarlo;
  out.value = dd * norm;
  out.error_estimate = dd * std::sqrt(noise_sq);
  out.sample_count = samples;
  return out;
}

std::vector<double> random_orthogonal(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> q(d * d);
  for (auto& v : q) v = gauss(rng);
  // Modified Gram–Schmidt on rows.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < d; ++k) dot += q[i * d + k] * q[j * d + k];
      for (std::size_t k = 0; k < d; ++k) q[i * d + k] -= dot * q[j * d + k];
    }
    double nrm = 0.0;
    for (std::size_t k = 0; k < d; ++k) nrm += q[i * d + k] * q[i * d + k];
    nrm = std::sqrt(nrm);
    for (std::size_t k = 0; k < d; ++k) q[i * d + k] /= nrm;
  }
  return q;
}

std::vector<double> apply_matrix(const std::vector<double>& m, const std::vector<double>& x) {
  const std::size_t d = x.size();
  if (m.size() != d * d) throw std::invalid_argument("apply_matrix: size mismatch");
  std::vector<double> y(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) y[i] += m[i * d + k] * x[k];
  return y;
}

double rotation_invariance_check(const SignalSpec& x, const QuantScheme& scheme, int rotations,
                                 std::uint64_t seed, double tol) {
  if (rotations < 2) throw std::invalid_argument("rotation_invariance_check: need at least 2 rotations");
  LimitOptions opts;
  opts.tol = tol;
  std::vector<double> values{limiting_error(x, scheme, LimitMethod::Quadrature, opts).value};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < rotations; ++i) {
    const auto q = random_orthogonal(x.dim(), rng);
    const SignalSpec rotated = make_signal(apply_matrix(q, x.x), scheme);
    values.push_back(limiting_error(rotated, scheme, LimitMethod::Quadrature, opts).value);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const double scale = std::max(std::abs(values[i]), std::abs(values[j]));
      if (scale > 0.0) worst = std::max(worst, std::abs(values[i] - values[j]) / scale);
    }
  return worst;
}

}  // namespace pcmq
