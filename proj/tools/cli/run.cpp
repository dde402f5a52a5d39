#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pcmq/bounds.hpp"
#include "pcmq/combinatorics.hpp"
#include "pcmq/csv_io.hpp"
#include "pcmq/errors.hpp"
#include "pcmq/frames.hpp"
#include "pcmq/limit_error.hpp"
#include "pcmq/quantization.hpp"
#include "pcmq/special_fn.hpp"

namespace pcmq::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using csv::format_double;

namespace {

const std::vector<std::string> kSubcommands{"verify", "bessel", "limit", "bounds", "simulate", "report"};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<LimitMethod> parse_methods(const std::string& s) {
  if (s == "all") return {LimitMethod::Quadrature, LimitMethod::BesselSeries, LimitMethod::MonteCarlo};
  std::vector<LimitMethod> out;
  for (const auto& m : split_list(s)) out.push_back(parse_limit_method(m));
  if (out.empty()) throw std::invalid_argument("methods: empty list");
  return out;
}

std::string yes_no(bool b) { return b ? "1" : "0"; }

std::vector<double> axis_signal(int d, double r, int axis) {
  std::vector<double> x(static_cast<std::size_t>(d), 0.0);
  x[static_cast<std::size_t>(axis)] = r;
  return x;
}

void write_config(const RunConfig& c, const fs::path& dir) {
  std::ofstream out(dir / (c.subcommand + "_config.json"));
  out << to_json(c).dump(2) << '\n';
}

int run_verify(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  const auto suites = comb::run_identity_suites(c.max_index);
  csv::Table t{{"suite", "max_index", "cases", "failures", "seconds", "passed"}, {}};
  bool ok = true;
  for (const auto& s : suites) {
    t.rows.push_back({s.name, std::to_string(c.max_index), std::to_string(s.cases), std::to_string(s.failures),
                      format_double(s.seconds), yes_no(s.passed())});
    log << (s.passed() ? "PASS  " : "FAIL  ") << s.name << "  cases=" << s.cases << " failures=" << s.failures
        << " (" << s.seconds << " s)\n";
    ok = ok && s.passed();
  }
  csv::write(dir / "verify.csv", t);
  return ok ? kPass : kCheckFailed;
}

int run_bessel(const RunConfig&, const fs::path& dir, std::ostream& log) {
  csv::Table t{{"order", "x", "value", "abs_error_bound", "main_term", "residual_bound", "c", "ok"}, {}};
  long violations = 0;
  long points = 0;
  for (int twice = 1; twice <= 12; ++twice) {
    const double order = 0.5 * twice;
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
      const auto e = special::bessel_j(order, x);
      const auto env = special::asymptotic_estimate(order, x);
      const bool ok = special::envelope_contains(env, e);
      ++points;
      if (!ok) ++violations;
      t.rows.push_back({format_double(order), format_double(x), format_double(e.value),
                        format_double(e.abs_error_bound), format_double(env.main_term),
                        format_double(env.residual_bound), format_double(env.c), yes_no(ok)});
    }
  }
  csv::write(dir / "bessel_envelope.csv", t);
  log << "envelope grid: " << points << " points, " << violations << " violations\n";
  return violations == 0 ? kPass : kCheckFailed;
}

int run_limit(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  const QuantScheme scheme(c.delta);
  const SignalSpec x = make_signal(axis_signal(c.d, c.r, 0), scheme);
  LimitOptions opts;
  opts.tol = c.tol;
  opts.seed = c.seed;
  opts.mc_samples = c.mc_samples;
  opts.mc_batches = c.mc_batches;
  const auto ref = limiting_error(x, scheme, LimitMethod::Quadrature, opts);
  const double scale = static_cast<double>(c.d) * angular_constant(c.d);

  csv::Table t{{"method", "d", "r", "delta", "R", "eps", "value", "error_estimate", "terms", "samples",
                "rel_diff_vs_quadrature", "agrees"},
               {}};
  bool ok = true;
  for (LimitMethod m : parse_methods(c.methods)) {
    LimitErrorResult res = ref;
    if (m == LimitMethod::BesselSeries) {
      LimitOptions so = opts;
      so.tol = std::max(c.series_rel_tol * ref.value / scale, 1e-300);
      res = limiting_error(x, scheme, m, so);
    } else if (m == LimitMethod::MonteCarlo) {
      res = limiting_error(x, scheme, m, opts);
    }
    const double diff = std::abs(res.value - ref.value);
    bool agrees = true;
    if (m == LimitMethod::BesselSeries) {
      agrees = diff <= c.agree_rel * ref.value + res.error_estimate + ref.error_estimate;
    } else if (m == LimitMethod::MonteCarlo) {
      agrees = diff <= 4.0 * res.error_estimate + ref.error_estimate;
    }
    ok = ok && agrees;
    const std::size_t terms = m == LimitMethod::Quadrature ? res.breakpoint_count : res.truncation_K;
    t.rows.push_back({std::string(to_string(m)), std::to_string(c.d), format_double(c.r), format_double(c.delta),
                      format_double(x.R), format_double(x.eps), format_double(res.value),
                      format_double(res.error_estimate), std::to_string(terms), std::to_string(res.sample_count),
                      format_double(ref.value > 0.0 ? diff / ref.value : diff), yes_no(agrees)});
    log << to_string(m) << "  " << format_double(res.value) << "  +- " << res.error_estimate
        << (agrees ? "" : "  DISAGREES") << '\n';
  }
  csv::write(dir / "limit.csv", t);
  return ok ? kPass : kCheckFailed;
}

int run_bounds(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  bool ok = true;
  const QuantScheme scheme(c.delta);
  const auto rep = bounds::lower_bound(c.d, c.r, c.delta);
  LimitOptions opts;
  opts.tol = c.tol;
  const double limit =
      limiting_error(make_signal(axis_signal(c.d, c.r, 0), scheme), scheme, LimitMethod::Quadrature, opts).value;
  const bool applicable = rep.window_ok && c.r / c.delta >= c.R_threshold;
  const bool holds = !applicable || (rep.lower <= limit && limit <= rep.upper_scaling);
  ok = ok && holds;
  csv::write(dir / "bounds.csv",
             csv::Table{{"d", "r", "delta", "eps", "lower", "limiting_error", "upper_scaling", "M", "I_const",
                         "I_printed", "C_const", "window_ok", "R_threshold", "status"},
                        {{std::to_string(c.d), format_double(c.r), format_double(c.delta), format_double(rep.eps),
                          format_double(rep.lower), format_double(limit), format_double(rep.upper_scaling),
                          format_double(rep.M), format_double(rep.I_const), format_double(rep.I_printed),
                          format_double(rep.C_const), yes_no(rep.window_ok), format_double(c.R_threshold),
                          !applicable ? "hypothesis_unmet" : (holds ? "holds" : "violated")}}});
  log << "lower " << rep.lower << " <= limit " << limit << " <= upper " << rep.upper_scaling
      << (applicable ? (holds ? "  holds" : "  VIOLATED") : "  (hypothesis unmet)") << '\n';

  const auto parity = bounds::parity_of(c.d);
  const int n = c.d / 2;
  const std::vector<double> eps_grid =
      parity == bounds::Parity::Even ? std::vector<double>{0.25, 0.3, 0.375, 0.5}
                                     : std::vector<double>{1.0 / 6.0, 0.25, 1.0 / 3.0};
  csv::Table sw{{"parity", "n", "R", "eps", "lower", "abs_integral", "upper", "status"}, {}};
  for (double base : {100.0, 1000.0}) {
    for (double e : eps_grid) {
      const auto s = bounds::lemma33_sandwich((base + e) * c.delta, c.delta, n, parity, c.R_threshold);
      if (s.status == bounds::SandwichStatus::Violated) ok = false;
      sw.rows.push_back({std::string(to_string(parity)), std::to_string(n), format_double(s.R), format_double(s.eps),
                         format_double(s.lower), format_double(s.integral), format_double(s.upper),
                         std::string(to_string(s.status))});
      log << "sandwich R=" << s.R << "  " << to_string(s.status) << '\n';
    }
  }
  csv::write(dir / "sandwich.csv", sw);

  const double eps = c.eps >= 0.0 ? c.eps : (parity == bounds::Parity::Even ? 0.375 : 0.25);
  const auto ks = bounds::log_spaced_ints(c.k_lo, c.k_hi, static_cast<std::size_t>(c.k_count));
  const auto fit = bounds::scaling_slope_fit(c.d, c.r, eps, ks);
  const double expected = (c.d + 1) / 2.0;
  const bool slope_ok = std::abs(fit.slope - expected) <= c.slope_tol;
  ok = ok && slope_ok;
  csv::Table st{{"d", "r", "eps", "k", "delta", "limiting_error"}, {}};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    st.rows.push_back({std::to_string(c.d), format_double(c.r), format_double(eps), std::to_string(ks[i]),
                       format_double(fit.deltas[i]), format_double(fit.values[i])});
  }
  csv::write(dir / "slope.csv", st);
  csv::write(dir / "slope_fit.csv",
             csv::Table{{"d", "eps", "points", "slope", "expected", "tolerance", "ok"},
                        {{std::to_string(c.d), format_double(eps), std::to_string(ks.size()),
                          format_double(fit.slope), format_double(expected), format_double(c.slope_tol),
                          yes_no(slope_ok)}}});
  log << "slope " << fit.slope << " (expected " << expected << ")" << (slope_ok ? "" : "  OUT OF TOLERANCE")
      << '\n';
  return ok ? kPass : kCheckFailed;
}

UnitNormFrame make_frame(const RunConfig& c) {
  std::string kind = c.frame;
  if (kind == "auto") kind = c.d == 2 ? "harmonic" : (c.d == 3 ? "fibonacci" : "random");
  const auto N = static_cast<std::size_t>(c.N);
  if (kind == "harmonic") {
    if (c.d != 2) throw std::invalid_argument("frame harmonic requires d = 2");
    return harmonic_frame_2d(N);
  }
  if (kind == "fibonacci") {
    if (c.d != 3) throw std::invalid_argument("frame fibonacci requires d = 3");
    return fibonacci_sphere_frame(N);
  }
  if (kind == "random") return random_sphere_frame(static_cast<std::size_t>(c.d), N, c.seed);
  throw std::invalid_argument("unknown frame: " + kind);
}

int run_simulate(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  const QuantScheme scheme(c.delta);
  const UnitNormFrame frame = make_frame(c);
  // Along the last axis, which is the polar axis of the Fibonacci lattice.
  const SignalSpec x = make_signal(axis_signal(c.d, c.r, c.d - 1), scheme);
  const auto rec = quantize_and_reconstruct(x, frame, scheme);
  LimitOptions opts;
  opts.tol = c.tol;
  const auto lim = limiting_error(x, scheme, LimitMethod::Quadrature, opts);
  const double mse = wnh_mse(c.d, c.N, scheme);
  const double rms = std::sqrt(mse);
  csv::write(dir / "simulate.csv",
             csv::Table{{"d", "N", "frame", "r", "delta", "R", "eps", "E_delta", "limiting_error",
                         "relative_gap", "wnh_mse", "wnh_rms", "E_over_wnh_rms", "tightness_defect"},
                        {{std::to_string(c.d), std::to_string(c.N), c.frame, format_double(c.r),
                          format_double(c.delta), format_double(x.R), format_double(x.eps),
                          format_double(rec.error), format_double(lim.value),
                          format_double(std::abs(rec.error - lim.value) / lim.value), format_double(mse),
                          format_double(rms), format_double(rec.error / rms),
                          format_double(frame.tightness_defect())}}});
  if (c.write_frame) csv::write(dir / "frame.csv", csv::frame_table(frame));
  log << "E_delta          " << format_double(rec.error) << '\n'
      << "limiting error   " << format_double(lim.value) << '\n'
      << "WNH MSE          " << format_double(mse) << "  (rms " << format_double(rms) << ")\n"
      << "tightness defect " << format_double(frame.tightness_defect()) << '\n';
  return kPass;
}

constexpr const char* kPlotScript = R"(# Emitted by `pcmq report`. Usage: python3 plot.py [dir]
import csv, math, os, sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

d = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))

def rows(name):
    p = os.path.join(d, name)
    if not os.path.exists(p):
        return []
    with open(p) as f:
        return list(csv.DictReader(f))

slope = rows("slope.csv")
if slope:
    x = [float(r["delta"]) for r in slope]
    y = [float(r["limiting_error"]) for r in slope]
    dim = int(slope[0]["d"])
    plt.figure()
    plt.loglog(x, y, "o-", label="limiting error")
    ref = [y[-1] * (v / x[-1]) ** ((dim + 1) / 2) for v in x]
    plt.loglog(x, ref, "--", label="slope (d+1)/2")
    plt.xlabel("delta")
    plt.legend()
    plt.savefig(os.path.join(d, "slope.png"), dpi=120)

sandwich = rows("sandwich.csv")
if sandwich:
    plt.figure()
    for key, style in (("lower", "v"), ("abs_integral", "o"), ("upper", "^")):
        plt.semilogy(range(len(sandwich)), [float(r[key]) for r in sandwich], style, label=key)
    plt.xticks(range(len(sandwich)), [r["R"] for r in sandwich], rotation=60)
    plt.legend()
    plt.tight_layout()
    plt.savefig(os.path.join(d, "sandwich.png"), dpi=120)
)";

int run_report(const RunConfig&, const fs::path& dir, std::ostream& log) {
  // file -> column holding a per-row check, empty when the table is descriptive
  const std::vector<std::pair<std::string, std::string>> known{
      {"verify.csv", "passed"}, {"bessel_envelope.csv", "ok"}, {"limit.csv", "agrees"},
      {"bounds.csv", ""},       {"sandwich.csv", ""},          {"slope_fit.csv", "ok"},
      {"simulate.csv", ""}};
  json summary = json::object();
  json tables = json::array();
  long failed = 0;
  for (const auto& [name, check] : known) {
    const fs::path p = dir / name;
    if (!fs::exists(p)) continue;
    const csv::Table t = csv::read(p);
    json entry{{"file", name}, {"rows", t.rows.size()}, {"columns", t.header}};
    long bad = 0;
    if (!check.empty()) {
      const std::size_t col = t.column(check);
      for (const auto& row : t.rows) bad += row[col] == "1" ? 0 : 1;
    } else if (name == "sandwich.csv" || name == "bounds.csv") {
      const std::size_t col = t.column("status");
      for (const auto& row : t.rows) bad += row[col] == "violated" ? 1 : 0;
    }
    entry["failed_rows"] = bad;
    if (name == "simulate.csv" || name == "bounds.csv" || name == "slope_fit.csv") {
      json first = json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) first[t.header[i]] = t.rows.at(0).at(i);
      entry["values"] = first;
    }
    failed += bad;
    tables.push_back(entry);
    log << name << ": " << t.rows.size() << " rows, " << bad << " failed\n";
  }
  if (tables.empty()) throw std::invalid_argument("report: no known tables in " + dir.string());
  summary["directory"] = dir.string();
  summary["tables"] = tables;
  summary["failed_rows"] = failed;
  std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
  std::ofstream(dir / "plot.py") << kPlotScript;
  return kPass;
}

}  // namespace

json to_json(const RunConfig& c) {
  return json{{"subcommand", c.subcommand},
              {"d", c.d},
              {"r", c.r},
              {"delta", c.delta},
              {"N", c.N},
              {"seed", c.seed},
              {"tol", c.tol},
              {"series_rel_tol", c.series_rel_tol},
              {"agree_rel", c.agree_rel},
              {"mc_samples", c.mc_samples},
              {"mc_batches", c.mc_batches},
              {"methods", c.methods},
              {"max_index", c.max_index},
              {"R_threshold", c.R_threshold},
              {"eps", c.eps},
              {"k_lo", c.k_lo},
              {"k_hi", c.k_hi},
              {"k_count", c.k_count},
              {"slope_tol", c.slope_tol},
              {"frame", c.frame},
              {"write_frame", c.write_frame},
              {"out_dir", c.out_dir}};
}

RunConfig from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  const json known = to_json(RunConfig{});
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  RunConfig c;
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("subcommand", c.subcommand);
    get("d", c.d);
    get("r", c.r);
    get("delta", c.delta);
    get("N", c.N);
    get("seed", c.seed);
    get("tol", c.tol);
    get("series_rel_tol", c.series_rel_tol);
    get("agree_rel", c.agree_rel);
    get("mc_samples", c.mc_samples);
    get("mc_batches", c.mc_batches);
    get("methods", c.methods);
    get("max_index", c.max_index);
    get("R_threshold", c.R_threshold);
    get("eps", c.eps);
    get("k_lo", c.k_lo);
    get("k_hi", c.k_hi);
    get("k_count", c.k_count);
    get("slope_tol", c.slope_tol);
    get("frame", c.frame);
    get("write_frame", c.write_frame);
    get("out_dir", c.out_dir);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

void validate(const RunConfig& c) {
  auto require = [](bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
  };
  require(std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) != kSubcommands.end(),
          "subcommand must be one of verify, bessel, limit, bounds, simulate, report");
  require(c.d >= 2 && c.d <= 64, "d must be in [2, 64]");
  require(std::isfinite(c.r) && c.r > 0.0, "r must be positive");
  require(std::isfinite(c.delta) && c.delta > 0.0, "delta must be positive");
  require(c.tol > 0.0 && c.series_rel_tol > 0.0 && c.agree_rel > 0.0, "tolerances must be positive");
  require(c.max_index >= 0 && c.max_index <= 200, "max_index must be in [0, 200]");
  require(c.mc_samples >= 1000, "mc_samples must be >= 1000");
  require(c.mc_batches >= 1 && c.mc_batches <= c.mc_samples, "mc_batches must be in [1, mc_samples]");
  parse_methods(c.methods);
  if (c.subcommand == "bounds") {
    require(c.d >= 3, "bounds requires d >= 3");
    require(c.k_lo >= 1 && c.k_hi > c.k_lo && c.k_count >= 4, "slope sweep needs 1 <= k_lo < k_hi, k_count >= 4");
    require(c.eps < 1.0, "eps must be < 1 (negative selects the window midpoint)");
  }
  if (c.subcommand == "simulate") {
    require(c.N >= c.d && c.N >= 3, "N must be >= max(d, 3)");
    require(c.frame == "auto" || c.frame == "fibonacci" || c.frame == "random" || c.frame == "harmonic",
            "frame must be auto, fibonacci, random or harmonic");
  }
}

fs::path resolve_out_dir(const RunConfig& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "pcmq_out";
}

int run(const RunConfig& c, std::ostream& log) {
  validate(c);
  const fs::path dir = resolve_out_dir(c);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::invalid_argument("cannot create output directory " + dir.string());
  if (c.subcommand != "report") write_config(c, dir);

  if (c.subcommand == "verify") return run_verify(c, dir, log);
  if (c.subcommand == "bessel") return run_bessel(c, dir, log);
  if (c.subcommand == "limit") return run_limit(c, dir, log);
  if (c.subcommand == "bounds") return run_bounds(c, dir, log);
  if (c.subcommand == "simulate") return run_simulate(c, dir, log);
  return run_report(c, dir, log);
}

}  // namespace pcmq::cli
