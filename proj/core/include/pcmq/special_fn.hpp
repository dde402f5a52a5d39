#pragma once

// Bessel functions of the first kind for nonnegative integer and half-integer
// orders, each evaluation carrying an absolute error bound.
//
// Routes:
//   bessel_series              ascending power series, alternating-tail bound
//   bessel_integral_int_order  (1/pi) * int_0^pi cos(n t - x sin t) dt
//   bessel_half_order          spherical-Bessel upward recurrence
//   bessel_hankel              large-argument expansion, first-neglected-term bound
//   bessel_j                   picks the cheapest route that certifies ~1e-12
//
// The bounds account for truncation and for binary64 rounding of the
// operations performed; the argument itself is taken as exact.

#include <cstddef>

namespace pcmq::special {

struct BesselEval {
  double order = 0.0;
  double argument = 0.0;
  double value = 0.0;
  double abs_error_bound = 0.0;
};

/// Leading term of the large-argument behaviour of J_order(x) together with
/// the explicit residual envelope c * mu * x^{-3/2}.
struct AsymptoticEnvelope {
  double main_term = 0.0;  // sqrt(2/(pi x)) cos(x - omega)
  double omega = 0.0;      // pi*order/2 + pi/4
  double mu = 0.0;         // |order^2 - 1/4|
  double c = 0.0;          // branch constant
  double residual_bound = 0.0;
};

/// Result of a truncated infinite sum with a certified total error bound.
struct SeriesSum {
  double value = 0.0;
  double abs_error_bound = 0.0;
  std::size_t terms = 0;
};

/// True when `order` is a nonnegative multiple of 1/2.
bool is_half_multiple(double order);

/// Gamma(order + 1) for `order` a nonnegative multiple of 1/2, formed as a
/// product of the exact rational factors times sqrt(pi) at half-integers.
double gamma_plus_one(double order);

/// Ascending series. Requires x <= series_domain_limit(order).
/// Throws std::invalid_argument for orders that are not multiples of 1/2,
/// std::domain_error outside the series domain and PrecisionExhausted when
/// cancellation prevents certifying `tol`.
BesselEval bessel_series(double order, double x, double tol);

/// Largest x accepted by bessel_series: 2 * max(30, order^2).
double series_domain_limit(double order);

/// Integral representation for integer orders, Gauss–Legendre with doubling.
BesselEval bessel_integral_int_order(int n, double x, double quad_tol);

/// J_{n+1/2}(x), x > 0. Falls back to the series when x < n + 1/2.
BesselEval bessel_half_order(int n, double x);

/// Hankel expansion; throws PrecisionExhausted if the smallest attainable
/// remainder exceeds `tol`.
BesselEval bessel_hankel(double order, double x, double tol);

/// Certified J_order(x) by the best available route.
BesselEval bessel_j(double order, double x);

AsymptoticEnvelope asymptotic_estimate(double order, double x);

/// |eval.value - env.main_term| <= env.residual_bound, allowing for the
/// evaluation's own error bound and the rounding of the main term.
bool envelope_contains(const AsymptoticEnvelope& env, const BesselEval& eval);

/// sum_{k>=1} (-1)^k k^{-p} J_order(2 k pi R) truncated after K terms; the
/// bound covers the omitted tail, per-term evaluation errors, argument
/// rounding and summation rounding.
SeriesSum alternating_bessel_sum_truncated(double order, double p, double R, std::size_t K);

/// Same sum with K chosen so that the tail bound is at most tol/2. Throws
/// PrecisionExhausted (carrying the achieved bound) when tol would need more
/// than kMaxAlternatingTerms terms or the tail is not summable.
SeriesSum alternating_bessel_sum(double order, double p, double R, double tol);

/// Certified bound on |sum_{k>K} (-1)^k k^{-p} J_order(2 k pi R)|.
double alternating_tail_bound(double order, double p, double R, std::size_t K);

inline constexpr std::size_t kMaxAlternatingTerms = 20'000'000;

}  // namespace pcmq::special
