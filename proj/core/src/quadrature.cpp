#include "pcmq/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pcmq/errors.hpp"

namespace pcmq::quad {
namespace {

struct Table {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on P_n from Tricomi's initial guesses; symmetric fill.
Table build(std::size_t n) {
  Table t;
  t.nodes.assign(n, 0.0);
  t.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    t.nodes[i] = -x;
    t.nodes[n - 1 - i] = x;
    t.weights[i] = w;
    t.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) t.nodes[n / 2] = 0.0;
  return t;
}

const std::array<Table, kMaxLevel + 1>& tables() {
  static const std::array<Table, kMaxLevel + 1> all = [] {
    std::array<Table, kMaxLevel + 1> a;
    for (int level = 1; level <= kMaxLevel; ++level) a[level] = build(std::size_t{1} << level);
    return a;
  }();
  return all;
}

}  // namespace

Rule gauss_legendre(int level) {
  if (level < 1 || level > kMaxLevel) throw std::out_of_range("gauss_legendre: level out of range");
  const auto& t = tables()[level];
  return Rule{t.nodes, t.weights};
}

namespace {

struct Sums {
  double value;
  double abs_value;
};

Sums apply_with_abs(const Rule& rule, const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < rule.order(); ++i) {
    const double v = rule.weights[i] * f(mid + half * rule.nodes[i]);
    sum += v;
    abs_sum += std::abs(v);
  }
  return {half * sum, std::abs(half) * abs_sum};
}

constexpr double kUnitRoundoff = 0x1p-53;

}  // namespace

double apply(const Rule& rule, const std::function<double(double)>& f, double a, double b) {
  return apply_with_abs(rule, f, a, b).value;
}

Result integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int start_level) {
  Sums prev = apply_with_abs(gauss_legendre(start_level), f, a, b);
  double diff = 0.0;
  for (int level = start_level + 1; level <= kMaxLevel; ++level) {
    const Sums cur = apply_with_abs(gauss_legendre(level), f, a, b);
    diff = std::abs(cur.value - prev.value);
    const double floor = 64.0 * kUnitRoundoff * cur.abs_value;
    if (diff <= std::max(tol, floor)) return Result{cur.value, diff, std::size_t{1} << level};
    prev = cur;
  }
  throw PrecisionExhausted("quadrature did not converge within 2^" + std::to_string(kMaxLevel) +
                               " nodes",
                           diff);
}

}  // namespace pcmq::quad
