#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/run.hpp"
#include "pcmq/errors.hpp"

namespace {

void diagnostic(const char* kind, const std::string& message, double achieved = -1.0) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  if (achieved >= 0.0) j["achieved"] = achieved;
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  using pcmq::cli::RunConfig;
  RunConfig c;
  std::string config_path;

  CLI::App app{"PCM quantization of unit-norm frames: limiting error, bounds and identity checks"};
  app.require_subcommand(0, 1);
  app.add_option("--config", config_path, "Replay a serialized run configuration (JSON)")->check(CLI::ExistingFile);
  app.add_option("--out", c.out_dir, "Output directory (default $PCMQ_OUT_DIR, then ./pcmq_out)");

  auto* verify = app.add_subcommand("verify", "Exhaustive exact identity suites");
  verify->add_option("--max", c.max_index, "Largest index")->capture_default_str();

  app.add_subcommand("bessel", "Asymptotic envelope check on the order/argument grid");

  auto* limit = app.add_subcommand("limit", "Limiting error by quadrature, Bessel series and Monte Carlo");
  auto* bounds = app.add_subcommand("bounds", "Lower bound, two-sided sandwich and slope fit");
  auto* simulate = app.add_subcommand("simulate", "Finite frame error vs limiting error vs white-noise model");
  app.add_subcommand("report", "Aggregate tables in the output directory into summary.json and plot.py");

  for (auto* sub : {limit, bounds, simulate}) {
    sub->add_option("--d", c.d, "Dimension")->capture_default_str();
    sub->add_option("--r", c.r, "Signal norm")->capture_default_str();
    sub->add_option("--delta", c.delta, "Quantizer step")->capture_default_str();
    sub->add_option("--tol", c.tol, "Absolute quadrature tolerance")->capture_default_str();
  }
  limit->add_option("--methods", c.methods, "Comma list of quadrature,series,mc or 'all'")->capture_default_str();
  limit->add_option("--samples", c.mc_samples, "Monte Carlo samples")->capture_default_str();
  limit->add_option("--batches", c.mc_batches, "Monte Carlo batches")->capture_default_str();
  limit->add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
  limit->add_option("--series-rel-tol", c.series_rel_tol, "Series tolerance relative to the quadrature value")
      ->capture_default_str();
  limit->add_option("--agree", c.agree_rel, "Relative agreement threshold")->capture_default_str();

  bounds->add_option("--R-threshold", c.R_threshold, "Smallest R at which the sandwich is asserted")
      ->capture_default_str();
  bounds->add_option("--eps", c.eps, "Fractional part for the slope sweep (negative: window midpoint)")
      ->capture_default_str();
  bounds->add_option("--k-lo", c.k_lo)->capture_default_str();
  bounds->add_option("--k-hi", c.k_hi)->capture_default_str();
  bounds->add_option("--k-count", c.k_count)->capture_default_str();
  bounds->add_option("--slope-tol", c.slope_tol)->capture_default_str();

  simulate->add_option("--N", c.N, "Frame size")->capture_default_str();
  simulate->add_option("--seed", c.seed, "Seed for random frames")->capture_default_str();
  simulate->add_option("--frame", c.frame, "auto, fibonacci, random or harmonic")->capture_default_str();
  simulate->add_flag("--write-frame", c.write_frame, "Also write frame.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pcmq::cli::kPass : pcmq::cli::kConfigError;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      const std::string out_override = c.out_dir;
      c = pcmq::cli::from_json(nlohmann::json::parse(in));
      if (!out_override.empty()) c.out_dir = out_override;
    } else if (!app.get_subcommands().empty()) {
      c.subcommand = app.get_subcommands().front()->get_name();
    } else {
      std::cerr << app.help();
      return pcmq::cli::kConfigError;
    }
    return pcmq::cli::run(c, std::cout);
  } catch (const pcmq::PrecisionExhausted& e) {
    diagnostic("precision_exhausted", e.what(), e.achieved());
    return pcmq::cli::kPrecisionExhausted;
  } catch (const nlohmann::json::exception& e) {
    diagnostic("config_error", e.what());
    return pcmq::cli::kConfigError;
  } catch (const std::invalid_argument& e) {
    diagnostic("config_error", e.what());
    return pcmq::cli::kConfigError;
  } catch (const std::exception& e) {
    diagnostic("runtime_error", e.what());
    return pcmq::cli::kConfigError;
  }
}
