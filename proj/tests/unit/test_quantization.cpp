#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "pcmq/frames.hpp"
#include "pcmq/quantization.hpp"

using namespace pcmq;

TEST_CASE("QuantScheme validates delta") {
  CHECK_THROWS_AS(QuantScheme(0.0), std::invalid_argument);
  CHECK_THROWS_AS(QuantScheme(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(QuantScheme(std::nan("")), std::invalid_argument);
  CHECK(QuantScheme(0.25).delta() == 0.25);
}

TEST_CASE("make_signal") {
  const auto s = make_signal({3.0, 4.0}, QuantScheme(2.0));
  CHECK(s.r == 5.0);
  CHECK(s.R == 2.5);
  CHECK(s.eps == 0.5);
  CHECK(s.dim() == 2);
}

TEST_CASE("pcm_quantize examples") {
  CHECK(pcm_quantize(0.4, QuantScheme(1.0)) == 0.0);
  CHECK(pcm_quantize(0.5, QuantScheme(1.0)) == 1.0);
  CHECK(pcm_quantize(0.3, QuantScheme(0.5)) == 0.5);
  CHECK(pcm_quantize(-0.5, QuantScheme(1.0)) == 0.0);
  CHECK(pcm_quantize(-0.6, QuantScheme(1.0)) == -1.0);
}

TEST_CASE("quant_error examples") {
  CHECK(quant_error(0.4, QuantScheme(1.0)) == 0.4);
  CHECK(quant_error(0.5, QuantScheme(1.0)) == -0.5);
  CHECK(quant_error(7.3, QuantScheme(1.0)) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("quantizer properties on random inputs") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> t_dist(-1e3, 1e3);
  std::uniform_real_distribution<double> d_dist(1e-3, 10.0);
  for (int i = 0; i < 20000; ++i) {
    const double t = t_dist(rng);
    const double delta = d_dist(rng);
    const QuantScheme q(delta);
    const double e = quant_error(t, q);
    const double slack = 4e-16 * (std::abs(t) + delta);
    CHECK(e >= -delta / 2.0 - slack);
    CHECK(e < delta / 2.0 + slack);
    CHECK(std::abs(quant_error(t + delta, q) - e) <= 2.0 * slack);
    const double k = pcm_quantize(t, q) / delta;
    CHECK(std::abs(k - std::round(k)) <= 1e-9);
    const double s = 0.5 + 3.0 * std::abs(t_dist(rng)) / 1e3;
    CHECK(std::abs(pcm_quantize(s * t, QuantScheme(s * delta)) - s * pcm_quantize(t, q)) <=
          1e-12 * std::abs(s * t) + 1e-12);
  }
}

TEST_CASE("reconstruction examples") {
  const QuantScheme one(1.0);
  const auto frame = harmonic_frame_2d(4);
  const auto r = quantize_and_reconstruct(make_signal({0.3, 0.0}, one), frame, one);
  CHECK(r.estimate[0] == 0.0);
  CHECK(r.estimate[1] == 0.0);
  CHECK(r.error == doctest::Approx(0.3));

  const auto zero = quantize_and_reconstruct(make_signal({0.0, 0.0}, one), frame, one);
  CHECK(zero.error == 0.0);

  CHECK_THROWS_AS(quantize_and_reconstruct(make_signal({1.0, 0.0, 0.0}, one), frame, one), std::invalid_argument);
}

TEST_CASE("fine quantization error vanishes") {
  const auto frame = harmonic_frame_2d(101);
  for (double delta : {1e-3, 1e-6, 1e-9}) {
    const QuantScheme q(delta);
    const auto r = quantize_and_reconstruct(make_signal({0.71, -0.33}, q), frame, q);
    CHECK(r.error <= 2.0 * delta / 2.0 + 1e-14);
  }
}

TEST_CASE("direct and sawtooth error agree for tight frames") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 5.0);
  for (std::size_t N : {3, 7, 64, 1000}) {
    const auto frame = harmonic_frame_2d(N);
    const QuantScheme q(0.37);
    const auto r = quantize_and_reconstruct(make_signal({g(rng), g(rng)}, q), frame, q);
    CHECK(std::abs(r.error - r.sawtooth_error) <= 1e-12 * (1.0 + r.error));
  }
}

TEST_CASE("white-noise MSE") {
  CHECK(wnh_mse(2, 100, QuantScheme(0.1)) == doctest::Approx(3.3333333333e-5));
  CHECK(wnh_mse(1, 12, QuantScheme(1.0)) == doctest::Approx(1.0 / 144.0));
  CHECK(wnh_mse(3, 1, QuantScheme(2.0)) == doctest::Approx(3.0));
  CHECK(wnh_mse(3, 200000, QuantScheme(0.1)) == doctest::Approx(3.75e-9));
  CHECK_THROWS_AS(wnh_mse(0, 10, QuantScheme(1.0)), std::invalid_argument);
}
