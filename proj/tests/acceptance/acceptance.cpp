// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "pcmq/bounds.hpp"
#include "pcmq/combinatorics.hpp"
#include "pcmq/errors.hpp"
#include "pcmq/frames.hpp"
#include "pcmq/limit_error.hpp"
#include "pcmq/quantization.hpp"
#include "pcmq/special_fn.hpp"

using namespace pcmq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SignalSpec axis_signal(int d, double r, const QuantScheme& q, int at) {
  std::vector<double> x(static_cast<std::size_t>(d), 0.0);
  x[static_cast<std::size_t>(at)] = r;
  return make_signal(std::move(x), q);
}

void identity_suites() {
  const auto t0 = Clock::now();
  const auto suites = comb::run_identity_suites(30);
  const double t = seconds_since(t0);
  long cases = 0;
  long failed = 0;
  for (const auto& s : suites) {
    cases += s.cases;
    failed += s.failures;
  }
  report(1, failed == 0 && suites.size() == 6 && t < 30.0,
         fmt("identity suites, indices <= 30: %zu suites, %ld cases, %ld failures, %.2f s (limit 30 s)",
             suites.size(), cases, failed, t));
}

void printed_constants() {
  double m1 = 1e300;
  for (int i = 0; i <= 1000; ++i) m1 = std::min(m1, bounds::M1_constant(0.25 + 0.25 * i / 1000.0, 2));
  double m2 = 1e300;
  for (int i = 0; i <= 1000; ++i) m2 = std::min(m2, bounds::M2_constant(1.0 / 6.0 + (1.0 / 6.0) * i / 1000.0, 1));
  const bool ok = std::abs(m1 - 0.138) <= 0.002 && std::abs(m2 - 0.02) <= 0.005;
  report(2, ok, fmt("worst-case M1(n=2) = %.6f (0.138 +- 0.002), M2(n=1) = %.6f (0.02 +- 0.005)", m1, m2));
}

void bessel_envelope() {
  long points = 0;
  long violations = 0;
  for (int twice = 1; twice <= 12; ++twice) {
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
      const double order = 0.5 * twice;
      const auto e = special::bessel_j(order, x);
      ++points;
      if (!special::envelope_contains(special::asymptotic_estimate(order, x), e)) ++violations;
    }
  }
  report(3, violations == 0,
         fmt("Bessel envelope on orders 1/2..6 x {0.5,...,50}: %ld points, %ld violations", points, violations));
}

void dual_method() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string where;
  for (int n = 1; n <= 3; ++n) {
    for (double R : {10.25, 25.375, 100.25}) {
      for (bool even : {true, false}) {
        const auto q = even ? integral_even(R, 1.0, n, LimitMethod::Quadrature, 1e-15)
                            : integral_odd(R, 1.0, n, LimitMethod::Quadrature, 1e-15);
        const double tol = 1e-8 * std::abs(q.value);
        const auto s = even ? integral_even(R, 1.0, n, LimitMethod::BesselSeries, tol)
                            : integral_odd(R, 1.0, n, LimitMethod::BesselSeries, tol);
        const double rel = std::abs(q.value - s.value) / std::abs(q.value);
        if (rel > worst) {
          worst = rel;
          where = fmt("%s n=%d R=%g", even ? "even" : "odd", n, R);
        }
      }
    }
  }
  const double t = seconds_since(t0);
  report(4, worst <= 1e-6 && t < 60.0,
         fmt("quadrature vs Bessel series, 18 cases: worst relative gap %.2e at %s (limit 1e-6), %.2f s", worst,
             where.c_str(), t));
}

void sandwich() {
  struct Case {
    bounds::Parity parity;
    int n;
    std::vector<double> eps;
  };
  const std::vector<Case> cases{
      {bounds::Parity::Even, 2, {0.25, 0.3, 0.375, 0.5}},
      {bounds::Parity::Even, 3, {0.25, 0.3, 0.375, 0.5}},
      {bounds::Parity::Odd, 1, {1.0 / 6.0, 0.25, 1.0 / 3.0}},
      {bounds::Parity::Odd, 2, {1.0 / 6.0, 0.25, 1.0 / 3.0}},
  };
  int total = 0;
  int violations = 0;
  int unmet = 0;
  std::string list;
  for (const auto& c : cases) {
    for (double base : {100.0, 1000.0}) {
      for (double e : c.eps) {
        const auto s = bounds::lemma33_sandwich(base + e, 1.0, c.n, c.parity);
        ++total;
        if (s.status == bounds::SandwichStatus::HypothesisUnmet) ++unmet;
        if (s.status == bounds::SandwichStatus::Violated) {
          ++violations;
          list += fmt(" [%s n=%d R=%.4f: |I|/lower=%.3f]", std::string(bounds::to_string(c.parity)).c_str(), c.n,
                      s.R, s.integral / s.lower);
        }
      }
    }
  }
  report(5, violations == 0 && unmet == 0,
         fmt("two-sided estimate, R threshold %.0f: %d points, %d violations, %d unmet%s", bounds::kDefaultRThreshold,
             total, violations, unmet, list.c_str()));
}

void slopes() {
  const auto t0 = Clock::now();
  const auto ks = bounds::log_spaced_ints(100, 1000, 16);
  bool ok = true;
  std::string detail;
  for (auto [d, eps] : {std::pair{3, 0.25}, std::pair{4, 0.375}, std::pair{5, 0.25}}) {
    const auto fit = bounds::scaling_slope_fit(d, 1.0, eps, ks);
    const double expected = (d + 1) / 2.0;
    ok = ok && std::abs(fit.slope - expected) <= 0.05;
    detail += fmt(" d=%d eps=%.3f slope %.4f (%.1f);", d, eps, fit.slope, expected);
  }
  const double t = seconds_since(t0);
  report(6, ok && t < 300.0, fmt("log-log slope, k=100..1000 (%zu points):%s %.2f s", ks.size(), detail.c_str(), t));
}

void frame_limit() {
  const auto frame = fibonacci_sphere_frame(200000);
  const QuantScheme q(1.0);
  const double wnh_rms = std::sqrt(wnh_mse(3, 200000, q));
  bool close = true;
  bool above = true;
  std::string detail;
  for (double R : {5.03, 20.3}) {
    // along the lattice's polar axis
    const auto x = axis_signal(3, R, q, 2);
    const double e = quantize_and_reconstruct(x, frame, q).error;
    const double lim = limiting_error(x, q, LimitMethod::Quadrature).value;
    const double rel = std::abs(e - lim) / lim;
    close = close && rel <= 0.05;
    above = above && e >= 10.0 * wnh_rms;
    detail += fmt(" R=%.2f: E=%.6g lim=%.6g rel %.2f%% E/WNH_rms %.2f;", R, e, lim, 100.0 * rel, e / wnh_rms);
  }
  report(7, close && above,
         fmt("Fibonacci N=2e5 (tightness defect %.1e): within 5%% %s, >= 10x WNH rms %s;%s", frame.tightness_defect(),
             close ? "yes" : "no", above ? "yes" : "no", detail.c_str()));
}

void rotations() {
  double worst = 0.0;
  const QuantScheme q(1.0);
  for (int d : {3, 4, 5}) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(100 + d));
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (auto& v : x) v = 7.0 * g(rng);
    worst = std::max(worst, rotation_invariance_check(make_signal(x, q), q, 5, 2024 + d, 1e-10));
  }
  report(8, worst <= 1e-6, fmt("5 random rotations for d = 3, 4, 5: max relative deviation %.2e (limit 1e-6)", worst));
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria{identity_suites, printed_constants, bessel_envelope, dual_method,
                                         sandwich,        slopes,            frame_limit,     rotations};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const PrecisionExhausted& e) {
      report(static_cast<int>(i + 1), false, fmt("precision exhausted: %s (achieved %.3g)", e.what(), e.achieved()));
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, fmt("error: %s", e.what()));
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
