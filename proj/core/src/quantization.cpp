#include "pcmq/quantization.hpp"

#include <cmath>
#include <stdexcept>

#include "pcmq/frames.hpp"

namespace pcmq {

QuantScheme::QuantScheme(double delta) : delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("QuantScheme: delta must be positive");
}

SignalSpec make_signal(std::vector<double> x, const QuantScheme& scheme) {
  SignalSpec s;
  double sq = 0.0;
  for (double v : x) sq += v * v;
  s.x = std::move(x);
  s.r = std::sqrt(sq);
  s.R = s.r / scheme.delta();
  s.eps = s.R - std::floor(s.R);
  return s;
}

double pcm_quantize(double t, const QuantScheme& scheme) {
  const double d = scheme.delta();
  return d * std::floor(t / d + 0.5);
}

double quant_error(double t, const QuantScheme& scheme) { return t - pcm_quantize(t, scheme); }

Reconstruction quantize_and_reconstruct(const SignalSpec& signal, const UnitNormFrame& frame,
                                        const QuantScheme& scheme) {
  const std::size_t d = frame.dim();
  if (signal.dim() != d) throw std::invalid_argument("quantize_and_reconstruct: dimension mismatch");
  const double scale = static_cast<double>(d) / static_cast<double>(frame.count());

  Reconstruction out;
  out.estimate.assign(d, 0.0);
  std::vector<double> saw(d, 0.0);
  for (std::size_t j = 0; j < frame.count(); ++j) {
    const auto e = frame.vector(j);
    double c = 0.0;
    for (std::size_t i = 0; i < d; ++i) c += signal.x[i] * e[i];
    const double q = pcm_quantize(c, scheme);
    const double err = c - q;
    for (std::size_t i = 0; i < d; ++i) {
      out.estimate[i] += q * e[i];
      saw[i] += err * e[i];
    }
  }
  double e2 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    out.estimate[i] *= scale;
    const double diff = signal.x[i] - out.estimate[i];
    e2 += diff * diff;
    s2 += scale * scale * saw[i] * saw[i];
  }
  out.error = std::sqrt(e2);
  out.sawtooth_error = std::sqrt(s2);
  return out;
}

double wnh_mse(int d, long N, const QuantScheme& scheme) {
  if (d < 1 || N < 1) throw std::invalid_argument("wnh_mse: need d, N >= 1");
  const double dd = static_cast<double>(d);
  return dd * dd * scheme.delta() * scheme.delta() / (12.0 * static_cast<double>(N));
}

}  // namespace pcmq
