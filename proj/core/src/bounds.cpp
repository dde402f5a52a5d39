#include "pcmq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "pcmq/limit_error.hpp"
#include "pcmq/quantization.hpp"

namespace pcmq::bounds {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kZetaPartial = 1'000'000;
constexpr double kWindowSlack = 1e-12;

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// (n-1)! C(2n-2, n-1) / (2^{2n-2} pi^n)
double even_prefactor(int n) {
  const double nn = static_cast<double>(n);
  return std::exp(log_factorial(n - 1) + log_factorial(2 * n - 2) - 2.0 * log_factorial(n - 1) -
                  (2.0 * nn - 2.0) * std::log(2.0) - nn * std::log(kPi));
}

// (n-1)! / pi^{n+1}
double odd_prefactor(int n) {
  return std::exp(log_factorial(n - 1) - (static_cast<double>(n) + 1.0) * std::log(kPi));
}

// int_0^pi sin^p t dt
double wallis(int p) {
  const double pp = static_cast<double>(p);
  return std::sqrt(kPi) * std::exp(std::lgamma((pp + 1.0) / 2.0) - std::lgamma(pp / 2.0 + 1.0));
}

double fractional_part(double R) { return R - std::floor(R); }

}  // namespace

namespace {

ZetaTail compute_zeta_tail(double s) {
  // smallest terms first
  double sum = 0.0;
  double comp = 0.0;
  for (long k = kZetaPartial; k >= 2; --k) {
    const double term = std::pow(static_cast<double>(k), -s);
    const double t = sum + term;
    comp += (sum - t) + term;
    sum = t;
  }
  sum += comp;
  const double K = static_cast<double>(kZetaPartial);
  const double rounding = 4.0 * 0x1p-53 * sum;
  return ZetaTail{sum + std::pow(K + 1.0, 1.0 - s) / (s - 1.0) - rounding,
                  sum + std::pow(K, 1.0 - s) / (s - 1.0) + rounding};
}

}  // namespace

ZetaTail zeta_tail(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("zeta_tail: s must exceed 1");
  static std::mutex mu;
  static std::map<double, ZetaTail> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(s); it != cache.end()) return it->second;
  }
  const ZetaTail t = compute_zeta_tail(s);
  std::lock_guard lock(mu);
  cache.emplace(s, t);
  return t;
}

double M1_constant(double eps, int n) {
  if (n < 2) throw std::invalid_argument("M1_constant: n must be >= 2");
  const double tail = zeta_tail((2.0 * n + 1.0) / 2.0).upper;
  return 0.8 * std::abs(std::cos(2.0 * kPi * eps - 0.75 * kPi)) - 1.25 * tail;
}

double M2_constant(double eps, int n) {
  if (n < 1) throw std::invalid_argument("M2_constant: n must be >= 1");
  const double tail = zeta_tail(static_cast<double>(n) + 1.0).upper;
  return 0.875 * std::abs(std::cos(2.0 * kPi * eps - 0.5 * kPi)) - (8.0 / 7.0) * tail;
}

IConstant I_constant(int d) {
  if (d < 3) throw std::invalid_argument("I_constant: d must be >= 3");
  const double dd = static_cast<double>(d);
  double half_ranges = 1.0;
  double full_ranges = 1.0;
  for (int j = 2; j <= d - 2; ++j) {
    const double w = wallis(d - 1 - j);
    half_ranges *= w;
    full_ranges *= 2.0 * w;
  }
  // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
  const double sphere = 2.0 * std::pow(kPi, dd / 2.0) / std::tgamma(dd / 2.0);
  return IConstant{dd * 2.0 * kPi * half_ranges / sphere, dd * 2.0 * kPi * full_ranges};
}

Parity parity_of(int d) { return d % 2 == 0 ? Parity::Even : Parity::Odd; }

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

bool in_window(double eps, Parity p) {
  if (p == Parity::Even) return eps >= 0.25 - kWindowSlack && eps <= 0.5 + kWindowSlack;
  return eps >= 1.0 / 6.0 - kWindowSlack && eps <= 1.0 / 3.0 + kWindowSlack;
}

BoundReport lower_bound(int d, double r, double delta) {
  if (d < 3) throw std::invalid_argument("lower_bound: d must be >= 3");
  if (!(r > 0.0) || !(delta > 0.0)) throw std::invalid_argument("lower_bound: r and delta must be positive");
  BoundReport rep;
  rep.d = d;
  rep.r = r;
  rep.delta = delta;
  rep.eps = fractional_part(r / delta);
  const Parity parity = parity_of(d);
  const int n = d / 2;
  const IConstant I = I_constant(d);
  rep.I_const = I.normalized;
  rep.I_printed = I.as_printed;
  const double dd = static_cast<double>(d);
  const double scaling = std::pow(delta, (dd + 1.0) / 2.0) / std::pow(r, (dd - 1.0) / 2.0);
  if (parity == Parity::Even) {
    rep.M = M1_constant(rep.eps, n);
    rep.C_const = even_prefactor(n) * rep.M * rep.I_const;
    rep.upper_scaling = 1.25 * even_prefactor(n) * (1.0 + zeta_tail(n + 0.5).upper) * rep.I_const * scaling;
  } else {
    rep.M = M2_constant(rep.eps, n);
    rep.C_const = odd_prefactor(n) * rep.M * rep.I_const;
    rep.upper_scaling = (8.0 / 7.0) * odd_prefactor(n) * (1.0 + zeta_tail(n + 1.0).upper) * rep.I_const * scaling;
  }
  rep.window_ok = in_window(rep.eps, parity);
  rep.lower = rep.window_ok ? rep.C_const * scaling : 0.0;
  return rep;
}

std::string_view to_string(SandwichStatus s) {
  switch (s) {
    case SandwichStatus::Holds:
      return "holds";
    case SandwichStatus::Violated:
      return "violated";
    case SandwichStatus::HypothesisUnmet:
      return "hypothesis_unmet";
  }
  return "unknown";
}

Sandwich lemma33_sandwich(double r, double delta, int n, Parity parity, double R_threshold) {
  if (!(r > 0.0) || !(delta > 0.0)) throw std::invalid_argument("lemma33_sandwich: r and delta must be positive");
  if (n < 1 || (parity == Parity::Even && n < 2)) {
    throw std::invalid_argument("lemma33_sandwich: need n >= 2 (even) or n >= 1 (odd)");
  }
  Sandwich out;
  out.R = r / delta;
  out.eps = fractional_part(out.R);
  const double nn = static_cast<double>(n);
  double scaling = 0.0;
  if (parity == Parity::Even) {
    scaling = std::pow(delta, (2.0 * nn + 1.0) / 2.0) / std::pow(r, (2.0 * nn - 1.0) / 2.0);
    out.lower = even_prefactor(n) * M1_constant(out.eps, n) * scaling;
    out.upper = 1.25 * even_prefactor(n) * (1.0 + zeta_tail(nn + 0.5).upper) * scaling;
  } else {
    scaling = std::pow(delta, nn + 1.0) / std::pow(r, nn);
    out.lower = odd_prefactor(n) * M2_constant(out.eps, n) * scaling;
    out.upper = (8.0 / 7.0) * odd_prefactor(n) * (1.0 + zeta_tail(nn + 1.0).upper) * scaling;
  }
  const double tol = 1e-9 * scaling;
  const auto est = parity == Parity::Even ? integral_even(r, delta, n, LimitMethod::Quadrature, tol)
                                          : integral_odd(r, delta, n, LimitMethod::Quadrature, tol);
  out.integral = std::abs(est.value);
  if (!in_window(out.eps, parity) || out.R < R_threshold) {
    out.status = SandwichStatus::HypothesisUnmet;
  } else {
    out.status = (out.lower <= out.integral && out.integral <= out.upper) ? SandwichStatus::Holds
                                                                         : SandwichStatus::Violated;
  }
  return out;
}

std::vector<long> log_spaced_ints(long lo, long hi, std::size_t count) {
  if (lo < 1 || hi < lo || count < 1) throw std::invalid_argument("log_spaced_ints: need 1 <= lo <= hi, count >= 1");
  std::vector<long> out;
  if (count == 1) return {lo};
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < count; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    const long k = std::clamp(std::lround(std::exp(t)), lo, hi);
    if (out.empty() || out.back() != k) out.push_back(k);
  }
  return out;
}

SlopeFit scaling_slope_fit(int d, double r, double eps, const std::vector<long>& ks, double tol) {
  if (ks.size() < 4) throw std::invalid_argument("scaling_slope_fit: need at least 4 points");
  if (d < 2 || !(r > 0.0)) throw std::invalid_argument("scaling_slope_fit: bad d or r");
  const double dd = static_cast<double>(d);
  SlopeFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (long k : ks) {
    const double delta = r / (static_cast<double>(k) + eps);
    const QuantScheme scheme(delta);
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    x[0] = r;
    LimitOptions opts;
    opts.tol = tol * std::pow(delta, (dd + 1.0) / 2.0) / std::pow(r, (dd - 1.0) / 2.0);
    const double v = limiting_error(make_signal(std::move(x), scheme), scheme, LimitMethod::Quadrature, opts).value;
    fit.deltas.push_back(delta);
    fit.values.push_back(v);
    xs.push_back(std::log(delta));
    ys.push_back(std::log(v));
  }
  const double m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace pcmq::bounds
