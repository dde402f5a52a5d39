#pragma once

// Exact verification of the discrete identities behind the Bessel-sum closed
// forms: the two alternating binomial sums, the telescoping certificate for the
// second one, the Gould-type symmetric sum, and the closed forms of the
// trigonometric moments L_m and D_m together with the coefficient identities
// they must satisfy.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace pcmq::comb {

using BigInt = boost::multiprecision::cpp_int;
/// Always in lowest terms with positive denominator.
using ExactRational = boost::multiprecision::cpp_rational;

enum class Scale { One, Pi, SqrtPi };

/// rational * {1, pi, sqrt(pi)}.
struct ScaledConstant {
  ExactRational rational;
  Scale scale = Scale::One;

  double to_double() const;
};

/// C(n, k), zero for k < 0 or k > n. Requires n >= 0.
BigInt binom(long n, long k);
BigInt factorial(long n);

/// Gamma(h + 1/2) / sqrt(pi) = (2h)! / (4^h h!).
ExactRational gamma_half_over_sqrt_pi(long h);

// sum_{m=0}^{h} (-1)^m (2m+1) C(n+h, h-m) C(n+h, h+m+1)  vs  n C(n+h, n)
BigInt identity_A_lhs(long n, long h);
BigInt identity_A_rhs(long n, long h);
bool check_identity_A(long n, long h);

// sum_{m=l}^{h} (-1)^m (2m+1) C(2h+1, h-m) C(m+l, 2l) == 0 for 0 <= l < h.
// Throws std::invalid_argument for l outside [0, h-1].
BigInt identity_B_summand(long h, long l, long m);
BigInt identity_B_sum(long h, long l);
bool check_identity_B(long h, long l);

/// g_m = (-1)^{m+1} (h+m+1)(m-l) C(2h+1, h-m) C(m+l, 2l) / (h-l); requires h != l.
ExactRational gosper_g(long h, long l, long m);
/// g_{m+1} - g_m == summand_B(h, l, m); requires 0 <= l < h, l <= m <= h.
bool gosper_certificate(long h, long l, long m);

// sum_{m=0}^{h} (-1)^m C(n+h, h-m) C(n+h, h+m)  vs  C(n+h,h)/2 + C(n+h,h)^2/2
BigInt gould_lhs(long n, long h);
ExactRational gould_rhs(long n, long h);
bool check_gould(long n, long h);

/// L_m = int_{-pi}^{pi} cos((2m+1)t) cos t sin^{2n-2} t dt, scale Pi.
/// Exact zero for m >= n.
ScaledConstant L_closed(long n, long m);
/// D_m = int_0^pi cos((2m+1)t) cos t sin^{2n-1} t dt (rational).
ExactRational D_closed(long n, long m);

/// sum_{m=0}^{h} L_m / ((h-m)! (h+m+1)!) == L_0 n! / (h! (h+n)!), after dividing by pi.
bool check_L_coefficient_identity(long n, long h);
/// sum_{m=0}^{h} D_m / ((h-m)! (h+m+1)!) == (n-1)!/4 * 2^{2h+2n+3} (h+n+1)! / (h! (2h+2n+2)!).
bool check_D_coefficient_identity(long n, long h);

struct SuiteResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  double seconds = 0.0;
  bool passed() const { return failures == 0; }
};

/// Every suite exhaustively over indices up to `max_index` (the Gosper suite
/// also checks the telescoped sum g_{h+1} - g_l against identity B).
std::vector<SuiteResult> run_identity_suites(long max_index);

}  // namespace pcmq::comb
