#pragma once

// N -> infinity reconstruction error for asymptotically equidistributed
// unit-norm frames:
//
//   lim E = d * || int_{S^{d-1}} Delta(x.z) z dnu(z) ||
//         = d * c_d * | int_0^pi Delta(r cos t) cos t sin^{d-2} t dt |
//
// with c_d = |S^{d-2}| / |S^{d-1}|. The one-dimensional integral is computed
// either by breakpoint-aware Gauss–Legendre quadrature or through its Bessel
// series; Monte Carlo over the sphere estimates the vector integral directly.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "pcmq/quantization.hpp"

namespace pcmq {

enum class LimitMethod { Quadrature, BesselSeries, MonteCarlo };

std::string_view to_string(LimitMethod m);
/// Accepts "quadrature", "series", "mc" (and the long spellings).
LimitMethod parse_limit_method(std::string_view s);

struct IntegralEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t breakpoints = 0;  // quadrature
  std::size_t terms = 0;        // Bessel series truncation K
};

/// int_0^pi Delta(r cos t) cos t sin^{2n-2} t dt, absolute tolerance `tol`.
IntegralEstimate integral_even(double r, double delta, int n, LimitMethod method, double tol);
/// int_0^pi Delta(r cos t) cos t sin^{2n-1} t dt.
IntegralEstimate integral_odd(double r, double delta, int n, LimitMethod method, double tol);

/// Breakpoint-aware quadrature of int_0^pi Delta(r cos t) cos t sin^power t dt.
IntegralEstimate sawtooth_moment_quadrature(double r, double delta, int power, double tol);

/// r * int_0^pi cos^2 t sin^power t dt: the moment when r < delta/2 and the
/// quantizer returns 0 everywhere.
double small_signal_moment(double r, int power);

/// |S^{d-2}| / |S^{d-1}|.
double angular_constant(int d);

struct LimitOptions {
  double tol = 1e-10;
  std::size_t mc_samples = 1'000'000;
  std::uint64_t seed = 1;
  std::size_t mc_batches = 16;
};

struct LimitErrorResult {
  double value = 0.0;
  LimitMethod method = LimitMethod::Quadrature;
  double error_estimate = 0.0;
  std::size_t breakpoint_count = 0;
  std::size_t truncation_K = 0;
  std::size_t sample_count = 0;
};

LimitErrorResult limiting_error(const SignalSpec& x, const QuantScheme& scheme, LimitMethod method,
                                const LimitOptions& opts = {});

/// d * ||(1/S) sum_s Delta(x.z_s) z_s|| over uniform z_s. Samples are split
/// into `batches` fixed partitions, each with its own seeded generator, and
/// combined in batch order, so results depend only on (samples, seed, batches).
/// error_estimate is d * sqrt(sum of per-component squared standard errors),
/// which also covers the upward bias of the norm when the mean is small.
LimitErrorResult monte_carlo_limit(const SignalSpec& x, const QuantScheme& scheme, std::size_t samples,
                                   std::uint64_t seed, std::size_t batches = 16);

/// Haar-distributed orthogonal d x d matrix, row-major.
std::vector<double> random_orthogonal(std::size_t d, std::mt19937_64& rng);

std::vector<double> apply_matrix(const std::vector<double>& m, const std::vector<double>& x);

/// Max pairwise relative deviation of the quadrature-route limiting error over
/// x and `rotations` random orthogonal images of x.
double rotation_invariance_check(const SignalSpec& x, const QuantScheme& scheme, int rotations,
                                 std::uint64_t seed, double tol = 1e-10);

}  // namespace pcmq
