#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace pcmq::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kConfigError = 2, kPrecisionExhausted = 3 };

inline constexpr const char* kOutDirEnv = "PCMQ_OUT_DIR";

/// Everything a run depends on. Serialized next to the outputs so that
/// `pcmq --config <dir>/<subcommand>_config.json` repeats the run.
struct RunConfig {
  std::string subcommand;  // verify, bessel, limit, bounds, simulate, report

  int d = 3;
  double r = 1.0;
  double delta = 1.0;
  long N = 200000;
  std::uint64_t seed = 1;

  double tol = 1e-10;           // absolute, quadrature
  double series_rel_tol = 1e-9; // series route, relative to the quadrature value
  double agree_rel = 1e-6;      // method agreement threshold
  std::size_t mc_samples = 1'000'000;
  std::size_t mc_batches = 16;
  std::string methods = "quadrature,series";

  long max_index = 30;

  double R_threshold = 50.0;
  double eps = -1.0;  // slope sweep; negative picks the middle of the window
  long k_lo = 100;
  long k_hi = 1000;
  long k_count = 16;
  double slope_tol = 0.05;

  std::string frame = "auto";  // auto, fibonacci, random, harmonic
  bool write_frame = false;

  std::string out_dir;  // empty: $PCMQ_OUT_DIR, then ./pcmq_out
};

nlohmann::json to_json(const RunConfig& c);
/// Unknown keys are rejected. Throws std::invalid_argument on bad values.
RunConfig from_json(const nlohmann::json& j);

/// Throws std::invalid_argument describing the first bad field.
void validate(const RunConfig& c);

std::filesystem::path resolve_out_dir(const RunConfig& c);

/// Runs one subcommand, writing tables under the output directory and a
/// human-readable summary to `log`. Returns an ExitCode.
int run(const RunConfig& c, std::ostream& log);

}  // namespace pcmq::cli
