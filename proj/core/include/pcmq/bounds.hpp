#pragma once

// Constants and two-sided estimates of the lower-bound theorem, and the
// log-log slope fit of the limiting error against delta.

#include <cstddef>
#include <string_view>
#include <vector>

namespace pcmq::bounds {

/// sum_{k>=2} k^{-s}: partial sum to k = 10^6 plus the integral-test bracket
/// [ (K+1)^{1-s}/(s-1), K^{1-s}/(s-1) ] on the remainder.
struct ZetaTail {
  double lower = 0.0;
  double upper = 0.0;
  double mid() const { return 0.5 * (lower + upper); }
};

/// Requires s > 1.
ZetaTail zeta_tail(double s);

/// (4/5)|cos(2 pi eps - 3 pi/4)| - (5/4) sum_{k>=2} k^{-(2n+1)/2}; n >= 2.
/// The upper end of the tail bracket is used, so the value is a certified
/// lower bound on the exact constant up to rounding.
double M1_constant(double eps, int n);
/// (7/8)|cos(2 pi eps - pi/2)| - (8/7) sum_{k>=2} k^{-(n+1)}; n >= 1.
double M2_constant(double eps, int n);

/// `normalized` is d * |S^{d-2}|/|S^{d-1}|: the angular factor that makes the
/// lower bound a statement about the limiting error. `as_printed` takes the
/// angle ranges literally (2 pi for the azimuth, [-pi, pi) for the others)
/// without the surface-measure normalization.
struct IConstant {
  double normalized = 0.0;
  double as_printed = 0.0;
};

/// d >= 3.
IConstant I_constant(int d);

enum class Parity { Even, Odd };

Parity parity_of(int d);
std::string_view to_string(Parity p);

/// eps in [1/4, 1/2] (even) or [1/6, 1/3] (odd), with 1e-12 slack for the
/// rounding of eps = R - floor(R).
bool in_window(double eps, Parity p);

struct BoundReport {
  int d = 0;
  double r = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double lower = 0.0;          // C * delta^{(d+1)/2} / r^{(d-1)/2}, 0 outside the window
  double upper_scaling = 0.0;  // upper estimate lifted by the same angular factor
  double M = 0.0;              // M1 (even) or M2 (odd)
  double I_const = 0.0;        // normalized
  double I_printed = 0.0;
  double C_const = 0.0;        // C_{1,d} or C_{2,d}
  bool window_ok = false;
};

/// d >= 3, r > 0, delta > 0.
BoundReport lower_bound(int d, double r, double delta);

enum class SandwichStatus { Holds, Violated, HypothesisUnmet };

std::string_view to_string(SandwichStatus s);

struct Sandwich {
  double lower = 0.0;
  double upper = 0.0;
  double integral = 0.0;  // |integral_even| or |integral_odd| by quadrature
  double R = 0.0;
  double eps = 0.0;
  SandwichStatus status = SandwichStatus::HypothesisUnmet;
};

inline constexpr double kDefaultRThreshold = 50.0;

/// Both sides of the two-sided estimate for the 1-D sawtooth moment. Returns
/// HypothesisUnmet (with the bounds still filled in where defined) when eps is
/// outside the window or R < R_threshold.
Sandwich lemma33_sandwich(double r, double delta, int n, Parity parity,
                          double R_threshold = kDefaultRThreshold);

/// `count` distinct integers, roughly log-spaced over [lo, hi], ascending.
std::vector<long> log_spaced_ints(long lo, long hi, std::size_t count);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> deltas;
  std::vector<double> values;
};

/// Least-squares slope of log(limiting error) vs log(delta_k) with
/// delta_k = r/(k + eps). Throws std::invalid_argument for fewer than 4 points.
SlopeFit scaling_slope_fit(int d, double r, double eps, const std::vector<long>& ks, double tol = 1e-12);

}  // namespace pcmq::bounds
