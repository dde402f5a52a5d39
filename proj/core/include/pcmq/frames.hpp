#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pcmq {

/// N unit vectors in R^d, stored row-major. Immutable after construction.
class UnitNormFrame {
 public:
  /// `vectors` holds count*dim entries. Throws std::invalid_argument if any
  /// row deviates from unit norm by more than 1e-12, or if dim < 2 or count < dim.
  UnitNormFrame(std::size_t dim, std::vector<double> vectors);

  std::size_t dim() const { return dim_; }
  std::size_t count() const { return count_; }
  std::span<const double> vector(std::size_t j) const { return {data_.data() + j * dim_, dim_}; }
  std::span<const double> data() const { return data_; }

  /// Frobenius norm of (d/N) sum_j e_j e_j^T - I.
  double tightness_defect() const { return tightness_defect_; }

 private:
  std::size_t dim_;
  std::size_t count_;
  std::vector<double> data_;
  double tightness_defect_;
};

/// (cos 2 pi j/N, sin 2 pi j/N), j = 0..N-1. Exactly tight. N >= 3.
UnitNormFrame harmonic_frame_2d(std::size_t N);

/// N i.i.d. uniform points on S^{d-1} (normalized Gaussians), seeded mt19937_64.
UnitNormFrame random_sphere_frame(std::size_t d, std::size_t N, std::uint64_t seed);

/// Spherical Fibonacci lattice on S^2: z_j = 1 - (2j+1)/N, azimuth j times
/// the golden angle. The polar axis is the third coordinate. N >= 3.
UnitNormFrame fibonacci_sphere_frame(std::size_t N);

/// Exact integral of z^beta against the normalized surface measure on S^{d-1}.
double sphere_moment(std::span<const int> beta);

/// max over monomials z^beta, 1 <= |beta| <= max_degree, of
/// |(1/N) sum_j e_j^beta - int z^beta dnu|.
double equidistribution_diagnostic(const UnitNormFrame& frame, int max_degree);

}  // namespace pcmq
