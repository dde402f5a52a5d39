#include "pcmq/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcmq/errors.hpp"
#include "pcmq/quadrature.hpp"

namespace pcmq::special {
namespace {

constexpr double kU = 0x1p-53;  // unit roundoff
constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_half_multiple(double order, const char* who) {
  if (!is_half_multiple(order)) {
    throw std::invalid_argument(std::string(who) + ": order must be a nonnegative multiple of 1/2");
  }
}

// cos and sin of m*pi/4; exact up to the rounding of sqrt(2)/2.
struct Phase {
  double c;
  double s;
};

Phase quarter_pi_phase(long m) {
  static constexpr Phase table[8] = {{1.0, 0.0},        {kInvSqrt2, kInvSqrt2},   {0.0, 1.0},
                                     {-kInvSqrt2, kInvSqrt2}, {-1.0, 0.0},      {-kInvSqrt2, -kInvSqrt2},
                                     {0.0, -1.0},       {kInvSqrt2, -kInvSqrt2}};
  const long r = ((m % 8) + 8) % 8;
  return table[r];
}

// cos(x - omega) and sin(x - omega) for omega = (2 order + 1) pi / 4, keeping
// the full argument reduction of x inside the libm call.
Phase shifted_phase(double order, double x) {
  const double twice = 2.0 * order + 1.0;
  const double cx = std::cos(x);
  const double sx = std::sin(x);
  if (twice == std::floor(twice) && std::abs(twice) < 1e15) {
    const Phase w = quarter_pi_phase(static_cast<long>(twice));
    return {cx * w.c + sx * w.s, sx * w.c - cx * w.s};
  }
  const double omega = kPi * order / 2.0 + kPi / 4.0;
  return {std::cos(x - omega), std::sin(x - omega)};
}

std::optional<BesselEval> try_hankel(double order, double x, double tol) {
  const double mu4 = 4.0 * order * order;
  constexpr std::size_t kMaxTerms = 240;
  std::vector<double> t;
  t.reserve(64);
  t.push_back(1.0);
  // Remainder of the P (resp. Q) sum is bounded by its first neglected term
  // once at least max(order/2 - 1/4, 1) (resp. max(order/2 - 3/4, 1)) terms
  // are kept.
  const double lp = std::max(std::ceil(order / 2.0 - 0.25), 1.0);
  const double lq = std::max(std::ceil(order / 2.0 - 0.75), 1.0);
  std::size_t k_min = 0;
  while (std::ceil(k_min / 2.0) < lp || std::floor(k_min / 2.0) < lq) ++k_min;

  for (std::size_t k = 1; k < kMaxTerms; ++k) {
    const double odd = 2.0 * static_cast<double>(k) - 1.0;
    t.push_back(t.back() * (mu4 - odd * odd) / (8.0 * static_cast<double>(k) * x));
    if (k > k_min + 2 && (t[k] == 0.0 || std::abs(t[k]) < 1e-3 * kU)) break;
  }

  // K = number of leading terms kept; neglected are t[K] and t[K+1].
  std::size_t best_k = k_min;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = k_min; k + 1 < t.size(); ++k) {
    const double r = std::abs(t[k]) + std::abs(t[k + 1]);
    if (r < best) {
      best = r;
      best_k = k;
    }
    if (r == 0.0) break;
  }
  if (!std::isfinite(best)) return std::nullopt;

  double p = 0.0;
  double q = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < best_k; ++i) {
    const double sign = ((i / 2) % 2 == 0) ? 1.0 : -1.0;
    if (i % 2 == 0) {
      p += sign * t[i];
    } else {
      q += sign * t[i];
    }
    abs_sum += std::abs(t[i]);
  }
  const Phase ph = shifted_phase(order, x);
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double value = amp * (p * ph.c - q * ph.s);

  const double kk = static_cast<double>(best_k);
  const double series_round = (7.0 * kk + 4.0) * kU * abs_sum;
  const double rounding =
      amp * ((std::abs(p) + std::abs(q)) * 8.0 * kU + series_round) + 4.0 * kU * std::abs(value);
  const double bound = amp * best * (1.0 + 4.0 * kU) + rounding;
  if (!(bound <= tol)) return std::nullopt;
  return BesselEval{order, x, value, bound};
}

}  // namespace

bool is_half_multiple(double order) {
  if (!std::isfinite(order) || order < 0.0) return false;
  const double twice = 2.0 * order;
  return twice == std::floor(twice);
}

double gamma_plus_one(double order) {
  require_half_multiple(order, "gamma_plus_one");
  const auto twice = static_cast<long>(2.0 * order);
  double g = 1.0;
  if (twice % 2 == 0) {
    for (long j = 2; j <= twice / 2; ++j) g *= static_cast<double>(j);
    return g;
  }
  // Gamma(h + 3/2) = sqrt(pi) * prod_{j=0}^{h} (j + 1/2)
  const long h = (twice - 1) / 2;
  for (long j = 0; j <= h; ++j) g *= static_cast<double>(j) + 0.5;
  return g * std::sqrt(kPi);
}

double series_domain_limit(double order) { return 2.0 * std::max(30.0, order * order); }

BesselEval bessel_series(double order, double x, double tol) {
  require_half_multiple(order, "bessel_series");
  if (!(tol > 0.0)) throw std::invalid_argument("bessel_series: tol must be positive");
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_series: x must be nonnegative");
  if (x > series_domain_limit(order)) {
    throw std::domain_error("bessel_series: x beyond the series evaluation domain");
  }
  if (x == 0.0) return BesselEval{order, x, order == 0.0 ? 1.0 : 0.0, 0.0};

  const double half = x / 2.0;
  const double q = half * half;
  double term = std::pow(half, order) / gamma_plus_one(order);
  const double first_rel = (2.0 * order + 6.0) * kU;

  double sum = 0.0;
  double abs_sum = 0.0;
  double next = 0.0;
  std::size_t k = 0;
  constexpr std::size_t kMaxTerms = 4000;
  for (;; ++k) {
    sum += term;
    abs_sum += std::abs(term);
    const double kp1 = static_cast<double>(k + 1);
    const double denom = kp1 * (kp1 + order);
    next = -term * q / denom;
    const bool decreasing = q < denom;
    if (decreasing && std::abs(next) <= std::min(0.25 * tol, kU * abs_sum)) break;
    if (k + 1 >= kMaxTerms) {
      throw PrecisionExhausted("bessel_series: term budget exhausted", std::abs(next));
    }
    term = next;
  }
  // Once q < (k+1)(k+1+order) the terms decrease monotonically in modulus, so
  // the alternating tail is bracketed by the first omitted term.
  const double truncation = std::abs(next);
  const double kk = static_cast<double>(k + 1);
  const double rounding = abs_sum * (first_rel + 6.0 * kk * kU) * 1.01;
  const double bound = truncation + rounding;
  if (bound > tol) {
    throw PrecisionExhausted("bessel_series: cancellation exceeds tolerance at x=" + std::to_string(x),
                             bound);
  }
  return BesselEval{order, x, sum, bound};
}

BesselEval bessel_integral_int_order(int n, double x, double quad_tol) {
  if (n < 0) throw std::invalid_argument("bessel_integral_int_order: n must be nonnegative");
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_integral_int_order: x must be nonnegative");
  if (!(quad_tol > 0.0)) throw std::invalid_argument("bessel_integral_int_order: quad_tol must be positive");

  const double nn = static_cast<double>(n);
  // Enough nodes to resolve the oscillation before the doubling test starts.
  const double nodes_needed = (x + nn) / 2.0 + 8.0;
  const int start = std::clamp(static_cast<int>(std::ceil(std::log2(nodes_needed))), 3, quad::kMaxLevel - 1);
  const auto res = quad::integrate([&](double t) { return std::cos(nn * t - x * std::sin(t)); }, 0.0, kPi,
                                   quad_tol * kPi, start);
  const double value = res.value / kPi;
  const double rounding = 4.0 * kU * (nn * kPi + x + 2.0) + static_cast<double>(res.order) * kU;
  return BesselEval{nn, x, value, res.error / kPi + rounding};
}

BesselEval bessel_half_order(int n, double x) {
  if (n < 0) throw std::invalid_argument("bessel_half_order: n must be nonnegative");
  if (!(x > 0.0)) throw std::invalid_argument("bessel_half_order: x must be positive");
  const double order = static_cast<double>(n) + 0.5;
  if (x < order) return bessel_series(order, x, 1e-13);

  // Spherical Bessel j_m(x) = sqrt(pi/(2x)) J_{m+1/2}(x), upward recurrence.
  const double s = std::sin(x);
  const double c = std::cos(x);
  double jm1 = s / x;
  double em1 = 2.0 * kU * (std::abs(s) + kU) / x;
  double jm = (s / x - c) / x;
  double em = 4.0 * kU * (std::abs(s) / x + std::abs(c) + kU) / x;
  if (n == 0) {
    jm = jm1;
    em = em1;
  }
  for (int m = 1; m < n; ++m) {
    const double f = (2.0 * m + 1.0) / x;
    const double next = f * jm - jm1;
    const double enext = (1.0 + f) * std::max(em, em1) + 3.0 * kU * (f * std::abs(jm) + std::abs(jm1));
    jm1 = jm;
    em1 = em;
    jm = next;
    em = enext;
  }
  const double scale = std::sqrt(2.0 * x / kPi);
  const double value = scale * jm;
  return BesselEval{order, x, value, scale * em * (1.0 + 4.0 * kU) + 4.0 * kU * std::abs(value)};
}

BesselEval bessel_hankel(double order, double x, double tol) {
  require_half_multiple(order, "bessel_hankel");
  if (!(x > 0.0)) throw std::invalid_argument("bessel_hankel: x must be positive");
  if (auto r = try_hankel(order, x, tol)) return *r;
  throw PrecisionExhausted("bessel_hankel: asymptotic remainder exceeds tolerance", tol);
}

BesselEval bessel_j(double order, double x) {
  require_half_multiple(order, "bessel_j");
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_j: x must be nonnegative");
  if (x == 0.0) return bessel_series(order, x, 1.0);

  const auto twice = static_cast<long>(2.0 * order);
  const bool half_integer = twice % 2 != 0;
  if (half_integer && x >= order) return bessel_half_order(static_cast<int>(twice / 2), x);
  if (x >= 12.0) {
    if (auto r = try_hankel(order, x, 1e-13)) return *r;
  }
  if (x <= series_domain_limit(order)) {
    try {
      return bessel_series(order, x, 1e-12);
    } catch (const PrecisionExhausted&) {
      if (half_integer) throw;
    }
  }
  if (!half_integer) return bessel_integral_int_order(static_cast<int>(twice / 2), x, 1e-14);
  throw PrecisionExhausted("bessel_j: no route certifies J at this argument", 0.0);
}

AsymptoticEnvelope asymptotic_estimate(double order, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("asymptotic_estimate: x must be positive");
  if (!(order >= -0.5)) throw std::invalid_argument("asymptotic_estimate: order must be >= -1/2");
  AsymptoticEnvelope env;
  env.omega = kPi * order / 2.0 + kPi / 4.0;
  env.mu = std::abs(order * order - 0.25);
  if (std::abs(order) <= 0.5) {
    env.c = std::pow(2.0 / kPi, 1.5);
  } else if (x >= std::sqrt(env.mu)) {
    env.c = std::sqrt(2.0) / 2.0;
  } else {
    env.c = 5.0 / 4.0;
  }
  env.main_term = std::sqrt(2.0 / (kPi * x)) * shifted_phase(order, x).c;
  env.residual_bound = env.c * env.mu * std::pow(x, -1.5);
  return env;
}

bool envelope_contains(const AsymptoticEnvelope& env, const BesselEval& eval) {
  const double amp = std::sqrt(2.0 / (kPi * eval.argument));
  const double slack = eval.abs_error_bound + 8.0 * kU * amp;
  return std::abs(eval.value - env.main_term) <= env.residual_bound + slack;
}

namespace {

struct TermModel {
  double order;
  double p;
  double R;
  double s;        // decay exponent p + 1/2 of the leading part
  double mu;       // |order^2 - 1/4|
  double phase_sin;  // |sin(pi (R + 1/2))|
};

TermModel make_model(double order, double p, double R) {
  require_half_multiple(order, "alternating_bessel_sum");
  if (!(p > 0.0)) throw std::invalid_argument("alternating_bessel_sum: p must be positive");
  if (!(R > 0.0)) throw std::invalid_argument("alternating_bessel_sum: R must be positive");
  const double shifted = R + 0.5;
  const double frac = shifted - std::floor(shifted);
  return TermModel{order, p, R, p + 0.5, std::abs(order * order - 0.25), std::abs(std::sin(kPi * frac))};
}

double tail_bound(const TermModel& m, std::size_t K) {
  const double amp = 1.0 / (kPi * std::sqrt(m.R));
  const double k1 = static_cast<double>(K) + 1.0;
  // Leading part a_k cos(2 pi k (R+1/2) - omega), a_k = amp k^{-s}: Abel
  // summation against partial sums of e^{2 pi i k (R+1/2)}, or the absolute
  // bound first-term + integral when s > 1.
  double lead = std::numeric_limits<double>::infinity();
  if (m.phase_sin > 0.0) lead = amp * std::pow(k1, -m.s) / m.phase_sin;
  if (m.s > 1.0) lead = std::min(lead, amp * (std::pow(k1, -m.s) + std::pow(k1, 1.0 - m.s) / (m.s - 1.0)));

  double rest = 0.0;
  if (m.mu > 0.0) {
    double c = 5.0 / 4.0;
    if (m.order <= 0.5) {
      c = std::pow(2.0 / kPi, 1.5);
    } else if (2.0 * kPi * k1 * m.R >= std::sqrt(m.mu)) {
      c = std::sqrt(2.0) / 2.0;
    }
    const double e = m.p + 1.5;
    rest = c * m.mu * std::pow(2.0 * kPi * m.R, -1.5) * (std::pow(k1, -e) + std::pow(k1, 1.0 - e) / (e - 1.0));
  }
  return lead + rest;
}

bool all_terms_vanish(const TermModel& m) {
  // J_{1/2}(2 k pi R) = sqrt(2/(pi x)) sin(2 k pi R) is exactly zero for 2R integer.
  const double twice_r = 2.0 * m.R;
  return m.order == 0.5 && twice_r == std::floor(twice_r);
}

}  // namespace

double alternating_tail_bound(double order, double p, double R, std::size_t K) {
  const TermModel m = make_model(order, p, R);
  if (all_terms_vanish(m)) return 0.0;
  return tail_bound(m, K);
}

SeriesSum alternating_bessel_sum_truncated(double order, double p, double R, std::size_t K) {
  const TermModel m = make_model(order, p, R);
  if (all_terms_vanish(m)) return SeriesSum{0.0, 0.0, K};

  const double two_pi_r = 2.0 * kPi * R;
  const double mu_deriv =
      std::max(std::abs((order - 1.0) * (order - 1.0) - 0.25), std::abs((order + 1.0) * (order + 1.0) - 0.25));
  // Neumaier compensated summation.
  double sum = 0.0;
  double comp = 0.0;
  double abs_sum = 0.0;
  double eval_err = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    const double x = two_pi_r * kd;
    const BesselEval e = bessel_j(order, x);
    const double w = std::pow(kd, -p);
    const double term = (k % 2 == 0 ? 1.0 : -1.0) * w * e.value;
    // x carries at most 3u relative error; |J'| = |J_{v-1} - J_{v+1}|/2 is
    // bounded through the same envelope with the largest branch constant.
    const double deriv = std::sqrt(2.0 / (kPi * x)) + 1.25 * mu_deriv * std::pow(x, -1.5);
    eval_err += w * (e.abs_error_bound + 3.0 * kU * x * deriv) + 3.0 * kU * std::abs(term);

    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    abs_sum += std::abs(term);
  }
  const double value = sum + comp;
  const double kd = static_cast<double>(K);
  const double rounding = 2.0 * kU * std::abs(value) + 4.0 * kd * kU * kU * abs_sum;
  return SeriesSum{value, tail_bound(m, K) + eval_err + rounding, K};
}

SeriesSum alternating_bessel_sum(double order, double p, double R, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("alternating_bessel_sum: tol must be positive");
  const TermModel m = make_model(order, p, R);
  if (all_terms_vanish(m)) return SeriesSum{0.0, 0.0, 0};

  const double target = 0.5 * tol;
  const double worst = tail_bound(m, kMaxAlternatingTerms);
  if (!(worst <= target)) {
    throw PrecisionExhausted("alternating_bessel_sum: tail bound " + std::to_string(worst) +
                                 " exceeds tolerance within the term budget",
                             worst);
  }
  std::size_t lo = 0;
  std::size_t hi = 1;
  while (tail_bound(m, hi) > target) {
    lo = hi;
    hi = std::min(hi * 2, kMaxAlternatingTerms);
  }
  while (lo + 1 < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tail_bound(m, mid) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  SeriesSum out = alternating_bessel_sum_truncated(order, p, R, hi);
  if (out.abs_error_bound > tol) {
    throw PrecisionExhausted("alternating_bessel_sum: accumulated evaluation error exceeds tolerance",
                             out.abs_error_bound);
  }
  return out;
}

}  // namespace pcmq::special
