#include "pcmq/combinatorics.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pcmq::comb {

double ScaledConstant::to_double() const {
  const double r = rational.convert_to<double>();
  switch (scale) {
    case Scale::Pi:
      return r * std::numbers::pi;
    case Scale::SqrtPi:
      return r * std::sqrt(std::numbers::pi);
    case Scale::One:
      break;
  }
  return r;
}

BigInt binom(long n, long k) {
  if (n < 0) throw std::invalid_argument("binom: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is C(n-k+i, i) here
  }
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: n must be nonnegative");
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

ExactRational gamma_half_over_sqrt_pi(long h) {
  if (h < 0) throw std::invalid_argument("gamma_half_over_sqrt_pi: h must be nonnegative");
  BigInt four_h = 1;
  four_h <<= static_cast<unsigned>(2 * h);
  return ExactRational(factorial(2 * h), four_h * factorial(h));
}

namespace {

int sign(long m) { return m % 2 == 0 ? 1 : -1; }

}  // namespace

BigInt identity_A_lhs(long n, long h) {
  BigInt s = 0;
  for (long m = 0; m <= h; ++m) s += sign(m) * (2 * m + 1) * binom(n + h, h - m) * binom(n + h, h + m + 1);
  return s;
}

BigInt identity_A_rhs(long n, long h) { return n * binom(n + h, n); }

bool check_identity_A(long n, long h) {
  if (n < 1 || h < 0) throw std::invalid_argument("check_identity_A: need n >= 1, h >= 0");
  return identity_A_lhs(n, h) == identity_A_rhs(n, h);
}

BigInt identity_B_summand(long h, long l, long m) {
  return sign(m) * (2 * m + 1) * binom(2 * h + 1, h - m) * binom(m + l, 2 * l);
}

BigInt identity_B_sum(long h, long l) {
  BigInt s = 0;
  for (long m = l; m <= h; ++m) s += identity_B_summand(h, l, m);
  return s;
}

bool check_identity_B(long h, long l) {
  if (h < 1 || l < 0 || l > h - 1) {
    throw std::invalid_argument("check_identity_B: the identity is claimed for 0 <= l <= h-1 only");
  }
  return identity_B_sum(h, l) == 0;
}

ExactRational gosper_g(long h, long l, long m) {
  if (h == l) throw std::invalid_argument("gosper_g: h == l divides by zero");
  const BigInt num = -sign(m) * (h + m + 1) * (m - l) * binom(2 * h + 1, h - m) * binom(m + l, 2 * l);
  return ExactRational(num, BigInt(h - l));
}

bool gosper_certificate(long h, long l, long m) {
  if (h == l) throw std::invalid_argument("gosper_certificate: h == l divides by zero");
  if (l < 0 || l > h || m < l || m > h) throw std::invalid_argument("gosper_certificate: index out of range");
  return gosper_g(h, l, m + 1) - gosper_g(h, l, m) == ExactRational(identity_B_summand(h, l, m));
}

BigInt gould_lhs(long n, long h) {
  BigInt s = 0;
  for (long m = 0; m <= h; ++m) s += sign(m) * binom(n + h, h - m) * binom(n + h, h + m);
  return s;
}

ExactRational gould_rhs(long n, long h) {
  const BigInt c = binom(n + h, h);
  return ExactRational(c + c * c, BigInt(2));
}

bool check_gould(long n, long h) {
  if (n < 0 || h < 0) throw std::invalid_argument("check_gould: need n, h >= 0");
  return ExactRational(gould_lhs(n, h)) == gould_rhs(n, h);
}

ScaledConstant L_closed(long n, long m) {
  if (n < 1 || m < 0) throw std::invalid_argument("L_closed: need n >= 1, m >= 0");
  if (m >= n) return ScaledConstant{ExactRational(0), Scale::Pi};
  BigInt pow2 = 1;
  pow2 <<= static_cast<unsigned>(2 * n - 2);
  const BigInt num = sign(m) * binom(2 * n - 2, n + m - 1) * (2 * m + 1);
  return ScaledConstant{ExactRational(num, pow2 * (n + m)), Scale::Pi};
}

ExactRational D_closed(long n, long m) {
  if (n < 1 || m < 0) throw std::invalid_argument("D_closed: need n >= 1, m >= 0");
  // The sqrt(pi) of the prefactor cancels against Gamma(m+n-k+3/2).
  const BigInt nf = factorial(n - 1);
  ExactRational s = 0;
  for (long k = 0; k <= m; ++k) {
    const ExactRational lead(sign(k) * binom(2 * m + 1 - k, k) * nf, BigInt(4 * (2 * m + 1 - k)));
    const ExactRational ratio(factorial(2 * m + 2 - 2 * k), factorial(m + 1 - k));
    s += lead * ratio / gamma_half_over_sqrt_pi(m + n - k + 1);
  }
  return s * (2 * m + 1);
}

namespace {

bool L_identity_with(long n, long h) {
  ExactRational lhs = 0;
  for (long m = 0; m <= h; ++m) {
    lhs += L_closed(n, m).rational / ExactRational(factorial(h - m) * factorial(h + m + 1));
  }
  const ExactRational rhs = L_closed(n, 0).rational * ExactRational(factorial(n), factorial(h) * factorial(h + n));
  return lhs == rhs;
}

ExactRational D_identity_rhs(long n, long h) {
  BigInt pow2 = 1;
  pow2 <<= static_cast<unsigned>(2 * h + 2 * n + 3);
  return ExactRational(factorial(n - 1) * pow2 * factorial(h + n + 1),
                       4 * factorial(h) * factorial(2 * h + 2 * n + 2));
}

bool D_identity_with(const std::vector<ExactRational>& d_table, long n, long h) {
  ExactRational lhs = 0;
  for (long m = 0; m <= h; ++m) lhs += d_table[static_cast<std::size_t>(m)] / ExactRational(factorial(h - m) * factorial(h + m + 1));
  return lhs == D_identity_rhs(n, h);
}

}  // namespace

bool check_L_coefficient_identity(long n, long h) {
  if (n < 1 || h < 0) throw std::invalid_argument("check_L_coefficient_identity: need n >= 1, h >= 0");
  return L_identity_with(n, h);
}

bool check_D_coefficient_identity(long n, long h) {
  if (n < 1 || h < 0) throw std::invalid_argument("check_D_coefficient_identity: need n >= 1, h >= 0");
  std::vector<ExactRational> table;
  for (long m = 0; m <= h; ++m) table.push_back(D_closed(n, m));
  return D_identity_with(table, n, h);
}

std::vector<SuiteResult> run_identity_suites(long max_index) {
  using clock = std::chrono::steady_clock;
  std::vector<SuiteResult> out;
  auto timed = [&](const std::string& name, auto&& body) {
    SuiteResult r{name};
    const auto t0 = clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    out.push_back(r);
  };
  auto tally = [](SuiteResult& r, bool ok) {
    ++r.cases;
    if (!ok) ++r.failures;
  };

  timed("identity_A", [&](SuiteResult& r) {
    for (long n = 1; n <= max_index; ++n)
      for (long h = 0; h <= max_index; ++h) tally(r, check_identity_A(n, h));
  });
  timed("identity_B", [&](SuiteResult& r) {
    for (long h = 1; h <= max_index; ++h)
      for (long l = 0; l < h; ++l) tally(r, check_identity_B(h, l));
  });
  timed("gosper_certificate", [&](SuiteResult& r) {
    for (long h = 1; h <= max_index; ++h)
      for (long l = 0; l < h; ++l) {
        for (long m = l; m <= h; ++m) tally(r, gosper_certificate(h, l, m));
        // telescoped: sum of summands = g_{h+1} - g_l with g_l = 0
        const ExactRational telescoped = gosper_g(h, l, h + 1) - gosper_g(h, l, l);
        tally(r, gosper_g(h, l, l) == 0 && telescoped == ExactRational(identity_B_sum(h, l)));
      }
  });
  timed("gould", [&](SuiteResult& r) {
    for (long n = 0; n <= max_index; ++n)
      for (long h = 0; h <= max_index; ++h) tally(r, check_gould(n, h));
  });
  timed("L_coefficients", [&](SuiteResult& r) {
    for (long n = 1; n <= max_index; ++n)
      for (long h = 0; h <= max_index; ++h) tally(r, L_identity_with(n, h));
  });
  timed("D_coefficients", [&](SuiteResult& r) {
    for (long n = 1; n <= max_index; ++n) {
      std::vector<ExactRational> table;
      for (long m = 0; m <= max_index; ++m) table.push_back(D_closed(n, m));
      for (long h = 0; h <= max_index; ++h) tally(r, D_identity_with(table, n, h));
    }
  });
  return out;
}

}  // namespace pcmq::comb
