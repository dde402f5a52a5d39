#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace pcmq::quad {

/// Gauss–Legendre nodes and weights on [-1, 1], ascending nodes.
struct Rule {
  std::span<const double> nodes;
  std::span<const double> weights;
  std::size_t order() const { return nodes.size(); }
};

/// Rule of order 2^level, level in [1, kMaxLevel]. Rules are built once on
/// first use and immutable afterwards, so this is safe from any thread.
Rule gauss_legendre(int level);

inline constexpr int kMaxLevel = 11;  // 2048 nodes

double apply(const Rule& rule, const std::function<double(double)>& f, double a, double b);

struct Result {
  double value = 0.0;
  double error = 0.0;  // |I_{2n} - I_n| of the accepted pair
  std::size_t order = 0;
};

/// Fixed-order Gauss–Legendre with doubling: starting at 2^start_level nodes,
/// the order doubles until two successive estimates agree to `tol`, or to the
/// rounding floor 64u·∫|f| when that is larger. Throws PrecisionExhausted when
/// kMaxLevel is reached first.
Result integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int start_level = 3);

}  // namespace pcmq::quad
