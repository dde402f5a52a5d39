#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pcmq/errors.hpp"
#include "pcmq/special_fn.hpp"

using namespace pcmq::special;

namespace {

constexpr double kPi = std::numbers::pi;

// 30-digit reference values (mpmath besselj).
struct Ref {
  double order, x, value;
};
constexpr Ref kRefs[] = {
    {1.0, 1.0, 0.440050585744933515959682203719},
    {1.0, 10.0, 0.0434727461688614366697487680259},
    {2.5, 3.0, 0.412710032209715993437496795942},
    {0.0, 50.0, 0.0558123276692518150047504785294},
    {6.0, 50.0, -0.0871210268209688802824711139027},
    {5.5, 50.0, -0.113110423458543313084109521206},
    {3.0, 2.0, 0.128943249474402051098793332969},
};

bool agree(const BesselEval& a, const BesselEval& b) {
  return std::abs(a.value - b.value) <= a.abs_error_bound + b.abs_error_bound;
}

// Tightest tolerance the series can certify, coarsening by decades. The
// rounding bound grows like e^x, so large arguments need loose tolerances.
BesselEval certified_series(double order, double x) {
  for (double tol = 1e-13;; tol *= 10.0) {
    try {
      return bessel_series(order, x, tol);
    } catch (const pcmq::PrecisionExhausted&) {
      if (tol > 1e-3) throw;
    }
  }
}

}  // namespace

TEST_CASE("bessel_series trivial arguments") {
  const auto j0 = bessel_series(0.0, 0.0, 1e-12);
  CHECK(j0.value == 1.0);
  CHECK(j0.abs_error_bound == 0.0);
  const auto j1 = bessel_series(1.0, 0.0, 1e-12);
  CHECK(j1.value == 0.0);
  CHECK(j1.abs_error_bound == 0.0);
  CHECK(bessel_series(2.5, 0.0, 1e-12).value == 0.0);
}

TEST_CASE("bessel_series J1(1)") {
  const auto e = bessel_series(1.0, 1.0, 1e-12);
  CHECK(e.abs_error_bound <= 1e-12);
  CHECK(std::abs(e.value - 0.440050585744933515959682203719) <= e.abs_error_bound);
}

TEST_CASE("bessel_series rejects bad input") {
  CHECK_THROWS_AS(bessel_series(0.3, 1.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(bessel_series(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_series(1.0, -1.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(bessel_series(1.0, series_domain_limit(1.0) * 1.01, 1e-3), std::domain_error);
  // cancellation near the domain edge cannot reach 1e-15
  CHECK_THROWS_AS(bessel_series(0.0, 55.0, 1e-15), pcmq::PrecisionExhausted);
}

TEST_CASE("bessel_integral_int_order") {
  CHECK(bessel_integral_int_order(0, 0.0, 1e-14).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(bessel_integral_int_order(2, 0.0, 1e-14).value) < 1e-15);
  CHECK(agree(bessel_integral_int_order(1, 1.0, 1e-14), bessel_series(1.0, 1.0, 1e-12)));
  CHECK_THROWS_AS(bessel_integral_int_order(-1, 1.0, 1e-14), std::invalid_argument);
}

TEST_CASE("bessel_half_order closed forms") {
  const auto a = bessel_half_order(0, kPi / 2.0);
  CHECK(std::abs(a.value - 2.0 / kPi) <= a.abs_error_bound + 1e-16);
  const auto b = bessel_half_order(0, kPi);
  CHECK(std::abs(b.value) <= b.abs_error_bound + 1e-16);
  CHECK(agree(bessel_half_order(2, 3.0), bessel_series(2.5, 3.0, 1e-13)));
  CHECK_THROWS_AS(bessel_half_order(1, 0.0), std::invalid_argument);
}

TEST_CASE("frozen reference values are inside the certified bounds") {
  for (const auto& r : kRefs) {
    CAPTURE(r.order);
    CAPTURE(r.x);
    const auto e = bessel_j(r.order, r.x);
    CHECK(e.abs_error_bound < 1e-11);
    CHECK(std::abs(e.value - r.value) <= e.abs_error_bound);
  }
}

TEST_CASE("bessel_j against Boost.Math over a grid") {
  for (int twice = 0; twice <= 16; ++twice) {
    const double order = 0.5 * twice;
    for (double x : {0.1, 0.7, 1.0, 3.3, 8.0, 12.5, 30.0, 64.0, 150.0, 1000.0, 31415.9}) {
      CAPTURE(order);
      CAPTURE(x);
      const auto e = bessel_j(order, x);
      const double ref = boost::math::cyl_bessel_j(order, x);
      // Boost is accurate to a few ulps of the larger of |J| and the local scale.
      CHECK(std::abs(e.value - ref) <= e.abs_error_bound + 1e-14 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("series and integral representation agree for integer orders") {
  for (int n = 0; n <= 6; ++n) {
    for (double x : {0.25, 1.0, 2.5, 5.0, 9.0, 14.0, 20.0}) {
      CAPTURE(n);
      CAPTURE(x);
      const auto e = certified_series(n, x);
      if (x <= 5.0) CHECK(e.abs_error_bound <= 1e-12);
      CHECK(agree(e, bessel_integral_int_order(n, x, 1e-14)));
    }
  }
}

TEST_CASE("J_{1/2} closed form and series agree on (0, 50]") {
  for (double x = 0.5; x <= 50.0; x += 0.5) {
    CAPTURE(x);
    if (x > 25.0) {
      // past here the series may only report exhaustion, never a wrong value
      try {
        const auto e = certified_series(0.5, x);
        CHECK(agree(bessel_half_order(0, x), e));
      } catch (const pcmq::PrecisionExhausted&) {
      }
      continue;
    }
    const auto e = certified_series(0.5, x);
    if (x <= 20.0) CHECK(e.abs_error_bound <= 1e-5);
    CHECK(agree(bessel_half_order(0, x), e));
  }
}

TEST_CASE("Hankel expansion agrees with the other routes") {
  CHECK(agree(bessel_hankel(0.0, 50.0, 1e-13), bessel_integral_int_order(0, 50.0, 1e-14)));
  CHECK(agree(bessel_hankel(5.5, 50.0, 1e-13), bessel_half_order(5, 50.0)));
  CHECK_THROWS_AS(bessel_hankel(6.0, 3.0, 1e-13), pcmq::PrecisionExhausted);
}

TEST_CASE("asymptotic envelope branches") {
  const auto half = asymptotic_estimate(0.5, 2.0);
  CHECK(half.mu == 0.0);
  CHECK(half.residual_bound == 0.0);
  CHECK(half.c == doctest::Approx(std::pow(2.0 / kPi, 1.5)));
  CHECK(std::abs(half.main_term - bessel_half_order(0, 2.0).value) < 1e-15);

  const auto e3 = asymptotic_estimate(3.0, 2.0);  // sqrt(mu) = sqrt(8.75) > 2
  CHECK(e3.c == 1.25);
  CHECK(e3.mu == doctest::Approx(8.75));
  CHECK(e3.omega == doctest::Approx(1.5 * kPi + kPi / 4.0));

  const auto e1 = asymptotic_estimate(1.0, 10.0);
  CHECK(e1.c == doctest::Approx(std::sqrt(2.0) / 2.0));
  const auto j = certified_series(1.0, 10.0);
  CHECK(std::abs(j.value - e1.main_term) <= std::sqrt(2.0) / 2.0 * 0.75 * std::pow(10.0, -1.5));
  CHECK(envelope_contains(e1, j));
}

TEST_CASE("envelope holds on a dense grid") {
  for (int twice = 1; twice <= 12; ++twice) {
    for (double x = 0.25; x <= 60.0; x *= 1.37) {
      const double order = 0.5 * twice;
      CAPTURE(order);
      CAPTURE(x);
      CHECK(envelope_contains(asymptotic_estimate(order, x), bessel_j(order, x)));
    }
  }
}

TEST_CASE("alternating sum: exact zero for order 1/2 and integer R") {
  const auto s = alternating_bessel_sum(0.5, 0.5, 1.0, 1e-12);
  CHECK(s.value == 0.0);
  CHECK(s.abs_error_bound == 0.0);
}

TEST_CASE("alternating sum matches the quadrature back-solve") {
  // integral_even(10.25, 1, n=2) = -(1/pi^2)(1/10.25)(pi/4) C(2,1) 1! * S
  const double integral = -0.001174066266195317639385244;
  const double expected = -integral * kPi * kPi * 10.25 * 4.0 / (kPi * 2.0);
  const auto s = alternating_bessel_sum(2.0, 2.0, 10.25, 1e-11);
  CHECK(std::abs(s.value - expected) <= s.abs_error_bound + 1e-15);
}

TEST_CASE("alternating sum: large-R decay bound for order 1") {
  for (double R : {200.25, 1000.4, 5000.3}) {
    const auto s = alternating_bessel_sum(1.0, 1.0, R, 1e-9);
    double zeta = 0.0;
    for (int k = 1; k <= 2'000'000; ++k) zeta += std::pow(k, -1.5);
    CHECK(std::abs(s.value) <= 1.25 / kPi / std::sqrt(R) * (zeta + 2.0 / std::sqrt(2e6)));
  }
}

TEST_CASE("alternating sum truncation is monotone within brackets") {
  const double order = 2.0;
  const double p = 2.0;
  const double R = 25.375;
  auto prev = alternating_bessel_sum_truncated(order, p, R, 50);
  for (std::size_t K : {100, 200, 400, 800, 1600}) {
    const auto cur = alternating_bessel_sum_truncated(order, p, R, K);
    CAPTURE(K);
    CHECK(cur.abs_error_bound <= prev.abs_error_bound);
    CHECK(std::abs(cur.value - prev.value) <= prev.abs_error_bound + cur.abs_error_bound);
    prev = cur;
  }
}

TEST_CASE("alternating tail bound decreases and bounds the true remainder") {
  const double order = 2.5;
  const double p = 2.5;
  const double R = 10.25;
  const auto full = alternating_bessel_sum(order, p, R, 1e-13);
  for (std::size_t K : {5, 20, 80}) {
    const auto part = alternating_bessel_sum_truncated(order, p, R, K);
    CAPTURE(K);
    CHECK(std::abs(full.value - part.value) <= alternating_tail_bound(order, p, R, K) + full.abs_error_bound +
                                                   1e-14);
    CHECK(alternating_tail_bound(order, p, R, K + 1) <= alternating_tail_bound(order, p, R, K));
  }
}

TEST_CASE("alternating sum reports exhaustion instead of a wrong value") {
  CHECK_THROWS_AS(alternating_bessel_sum(1.0, 1.0, 10.25, 1e-16), pcmq::PrecisionExhausted);
  try {
    alternating_bessel_sum(1.0, 1.0, 10.25, 1e-16);
  } catch (const pcmq::PrecisionExhausted& e) {
    CHECK(e.achieved() > 1e-16);
  }
}
