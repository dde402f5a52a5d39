#pragma once

#include <span>
#include <vector>

namespace pcmq {

class UnitNormFrame;

/// Uniform PCM alphabet delta*Z.
class QuantScheme {
 public:
  explicit QuantScheme(double delta);
  double delta() const { return delta_; }

 private:
  double delta_;
};

/// A signal together with r = ||x||, R = r/delta and eps = R - floor(R).
struct SignalSpec {
  std::vector<double> x;
  double r = 0.0;
  double R = 0.0;
  double eps = 0.0;

  std::size_t dim() const { return x.size(); }
};

SignalSpec make_signal(std::vector<double> x, const QuantScheme& scheme);

/// Q(t) = delta * floor(t/delta + 1/2); ties round up.
double pcm_quantize(double t, const QuantScheme& scheme);

/// Signed sawtooth t - Q(t), range [-delta/2, delta/2).
double quant_error(double t, const QuantScheme& scheme);

struct Reconstruction {
  std::vector<double> estimate;  // (d/N) sum_j q_j e_j
  double error = 0.0;            // ||x - estimate||
  double sawtooth_error = 0.0;   // ||(d/N) sum_j (x.e_j - q_j) e_j||, equal to `error` for tight frames
};

/// Throws std::invalid_argument on dimension mismatch.
Reconstruction quantize_and_reconstruct(const SignalSpec& signal, const UnitNormFrame& frame,
                                        const QuantScheme& scheme);

/// Mean square error d^2 delta^2 / (12 N) under the white-noise model.
double wnh_mse(int d, long N, const QuantScheme& scheme);

}  // namespace pcmq
