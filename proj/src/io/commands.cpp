#include "hotlane/io/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "hotlane/analysis.hpp"
#include "hotlane/estimation.hpp"
#include "hotlane/io/artifacts.hpp"
#include "hotlane/io/scenario_file.hpp"
#include "hotlane/scenarios.hpp"
#include "hotlane/sim_engine.hpp"

namespace hotlane::io {

namespace fs = std::filesystem;

namespace {

struct Resolved {
  ScenarioConfig cfg;
  std::string label;
};

// A path that exists is loaded; otherwise a bundled scenario id is accepted.
Resolved resolve_scenario(const fs::path& arg) {
  if (fs::exists(arg)) return {load_scenario(arg), arg.string()};
  const auto& names = scenarios::names();
  if (std::find(names.begin(), names.end(), arg.string()) != names.end()) {
    return {scenarios::by_name(arg.string()), "bundled:" + arg.string()};
  }
  throw SchemaError(fmt::format("scenario '{}' is neither a readable file nor a bundled id", arg.string()));
}

template <typename Fn>
void write_file(const fs::path& dir, const std::string& name, std::vector<std::string>& listed, Fn&& fn) {
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", (dir / name).string()));
  fn(out);
  listed.push_back(name);
}

bool report_validation(const ScenarioConfig& cfg, std::ostream& log) {
  const auto rep = validate_scenario(cfg);
  for (const auto& w : rep.warnings) fmt::print(log, "warning: {}\n", w);
  for (const auto& e : rep.errors) fmt::print(log, "error: {}\n", e);
  return rep.ok();
}

void write_estimates(const SimTrace& trace, const fs::path& dir, std::vector<std::string>& listed) {
  const auto& cfg = trace.config;
  if (!cfg.estimation.enabled) return;
  if (std::holds_alternative<LogitSpec>(cfg.choice_model)) {
    const auto est = harvest_logit_estimates(trace.records, cfg.estimation.alpha);
    write_file(dir, "estimates.csv", listed, [&](std::ostream& o) { write_vot_estimates_csv(o, est); });
  } else if (std::holds_alternative<UeSpec>(cfg.choice_model)) {
    std::vector<EmpiricalCdfPoint> pts;
    std::vector<double> times;
    for (const auto& r : trace.records) {
      if (auto p = accumulate_cdf_point(r.u_applied, r.w, r.q2, r.q3)) {
        pts.push_back(*p);
        times.push_back(r.t);
      }
    }
    write_file(dir, "estimates.csv", listed, [&](std::ostream& o) { write_cdf_csv(o, pts, true, times); });
    const auto cdf = empirical_cdf(pts);
    write_file(dir, "cdf.csv", listed, [&](std::ostream& o) { write_cdf_csv(o, cdf.points, false); });
    if (cdf.points.size() >= 2) {
      const auto pdf = empirical_pdf(pts);
      write_file(dir, "pdf.csv", listed, [&](std::ostream& o) { write_pdf_csv(o, pdf.density); });
    }
  }
}

int execute(ScenarioConfig cfg, const std::string& label, const fs::path& out_dir, const CommonOptions& opts,
            bool phase_only, std::ostream& log) {
  if (opts.seed) cfg.rng_seed = *opts.seed;
  if (!report_validation(cfg, log)) return kValidation;

  SimTrace trace;
  try {
    trace = run(cfg);
  } catch (const NumericAbortError& e) {
    fmt::print(log, "numeric abort at step {}: {}\n", e.step(), e.what());
    return kNumericAbort;
  }

  fs::create_directories(out_dir);
  std::vector<std::string> listed;
  if (phase_only) {
    write_file(out_dir, "phase.csv", listed, [&](std::ostream& o) { write_phase_csv(o, trace.records); });
  } else {
    write_file(out_dir, "trace.csv", listed, [&](std::ostream& o) { write_trace_csv(o, trace.records); });
    write_estimates(trace, out_dir, listed);
  }
  const auto summary = summarize(trace);
  write_file(out_dir, "summary.txt", listed, [&](std::ostream& o) { write_summary(o, summary); });
  write_file(out_dir, "scenario.yaml", listed, [&](std::ostream& o) { o << format_scenario(cfg); });

  RunManifest manifest;
  manifest.scenario = label;
  manifest.output_dir = out_dir;
  manifest.commands = opts.command_line;
  manifest.seed = cfg.rng_seed;
  manifest.seed_overridden = opts.seed.has_value();
  write_manifest(manifest, listed);

  write_summary(log, summary);
  if (opts.require_convergence && !summary.convergence_time) {
    fmt::print(log, "error: run did not converge (eps_lambda={}, eps_zeta={})\n", kSummaryEpsLambda,
               kSummaryEpsZeta);
    return kNoConvergence;
  }
  return kSuccess;
}

}  // namespace

fs::path default_output_dir(const std::string& leaf) {
  if (const char* root = std::getenv(kOutRootEnv); root != nullptr && *root != '\0') return fs::path(root) / leaf;
  return fs::path("hotlane-out") / leaf;
}

int cmd_run(const fs::path& scenario_file, const CommonOptions& opts, std::ostream& log) {
  Resolved sc;
  try {
    sc = resolve_scenario(scenario_file);
  } catch (const SchemaError& e) {
    fmt::print(log, "error: {}\n", e.what());
    return kValidation;
  }
  const auto leaf = sc.cfg.name.empty() ? scenario_file.stem().string() : sc.cfg.name;
  const auto out = opts.out_dir.value_or(default_output_dir(leaf));
  return execute(sc.cfg, sc.label, out, opts, false, log);
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> kIds{"logit-constant", "logit-poisson", "ue-constant",
                                             "ue-poisson",     "logit-phase",   "ue-phase"};
  return kIds;
}

int cmd_reproduce(const std::string& figure_id, const CommonOptions& opts, std::ostream& log) {
  const auto& ids = figure_ids();
  if (std::find(ids.begin(), ids.end(), figure_id) == ids.end()) {
    std::string valid;
    for (const auto& id : ids) valid += (valid.empty() ? "" : ", ") + id;
    fmt::print(log, "error: unknown figure id '{}'; valid ids: {}\n", figure_id, valid);
    return kUsage;
  }
  ScenarioConfig cfg;
  bool phase = false;
  if (figure_id == "logit-phase") {
    cfg = scenarios::logit_constant();
    phase = true;
  } else if (figure_id == "ue-phase") {
    cfg = scenarios::ue_constant();
    phase = true;
  } else {
    cfg = scenarios::by_name(figure_id);
  }
  const auto out = opts.out_dir.value_or(default_output_dir(figure_id));
  return execute(cfg, "bundled:" + figure_id, out, opts, phase, log);
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> kParams{"q3", "k1", "k2", "k3", "k4", "k12", "k34", "dt", "horizon", "seed"};
  return kParams;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item.substr(first), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(fmt::format("grid entry '{}' is not a number", item));
    }
    if (item.find_first_not_of(" \t", first + used) != std::string::npos) {
      throw std::invalid_argument(fmt::format("grid entry '{}' is not a number", item));
    }
    grid.push_back(v);
  }
  if (grid.empty()) throw std::invalid_argument("grid is empty");
  return grid;
}

namespace {

ScenarioConfig with_parameter(ScenarioConfig cfg, const std::string& name, double v) {
  if (name == "k1") cfg.gains.k1 = v;
  else if (name == "k2") cfg.gains.k2 = v;
  else if (name == "k3") cfg.gains.k3 = v;
  else if (name == "k4") cfg.gains.k4 = v;
  else if (name == "k12") cfg.gains.k1 = cfg.gains.k2 = v;
  else if (name == "k34") cfg.gains.k3 = cfg.gains.k4 = v;
  else if (name == "dt") cfg.dt = v;
  else if (name == "horizon") cfg.horizon = v;
  else if (name == "seed") cfg.rng_seed = static_cast<std::uint64_t>(v);
  return cfg;
}

struct SweepRow {
  double value = 0.0;
  std::string status;
  RunSummary summary;
};

SweepRow sweep_point(const ScenarioConfig& base, const std::string& name, double v) {
  SweepRow row{v, "ok", {}};
  const auto cfg = with_parameter(base, name, v);
  try {
    row.summary = summarize(run(cfg));
  } catch (const ScenarioError&) {
    row.status = "invalid";
  } catch (const NumericAbortError&) {
    row.status = "numeric_abort";
  }
  return row;
}

}  // namespace

int cmd_sweep(const fs::path& base_scenario, const std::string& parameter, const std::vector<double>& grid,
              const CommonOptions& opts, std::ostream& log) {
  const auto& params = sweep_parameters();
  if (std::find(params.begin(), params.end(), parameter) == params.end()) {
    std::string valid;
    for (const auto& p : params) valid += (valid.empty() ? "" : ", ") + p;
    fmt::print(log, "error: unknown sweep parameter '{}'; valid: {}\n", parameter, valid);
    return kUsage;
  }
  if (grid.empty()) {
    fmt::print(log, "error: sweep grid is empty\n");
    return kUsage;
  }

  Resolved sc;
  try {
    sc = resolve_scenario(base_scenario);
  } catch (const SchemaError& e) {
    fmt::print(log, "error: {}\n", e.what());
    return kValidation;
  }
  auto base = sc.cfg;
  if (opts.seed) base.rng_seed = *opts.seed;
  if (!report_validation(base, log)) return kValidation;

  const auto leaf = (sc.cfg.name.empty() ? base_scenario.stem().string() : sc.cfg.name) + "-sweep-" + parameter;
  const auto out = opts.out_dir.value_or(default_output_dir(leaf));
  fs::create_directories(out);
  std::vector<std::string> listed;

  if (parameter == "q3") {
    Theorem1Result res;
    try {
      res = theorem1_sweep(base, grid);
    } catch (const std::invalid_argument& e) {
      fmt::print(log, "error: {}\n", e.what());
      return kValidation;
    } catch (const AssumptionError& e) {
      fmt::print(log, "error: {}\n", e.what());
      return kValidation;
    }
    write_file(out, "sweep.csv", listed, [&](std::ostream& o) {
      o << "q3,phi2,phi3,phi\n";
      for (const auto& p : res.points) fmt::print(o, "{},{},{},{}\n", p.q3, p.cost.phi2, p.cost.phi3, p.cost.phi);
    });
    fmt::print(log, "argmin q3: {} ({})\n", res.argmin_q3,
               res.argmin_at_capacity ? "largest feasible level" : "interior level");
  } else {
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(grid.size());
    for (double v : grid) jobs.push_back(std::async(std::launch::async, sweep_point, std::cref(base), parameter, v));
    std::vector<SweepRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());

    auto opt = [](const std::optional<double>& x) { return x ? fmt::format("{}", *x) : std::string(); };
    write_file(out, "sweep.csv", listed, [&](std::ostream& o) {
      o << parameter
        << ",status,convergence_time,queue_clear_time,max_lambda1,final_a,final_b,price_slope\n";
      for (const auto& r : rows) {
        const auto& s = r.summary;
        fmt::print(o, "{},{},{},{},{},{},{},{}\n", r.value, r.status, opt(s.convergence_time),
                   opt(s.queue_clear_time), s.max_lambda1, s.final_a, s.final_b, s.price_slope);
      }
    });
    for (const auto& r : rows) {
      fmt::print(log, "{}={} status={} convergence={} queue_clear={}\n", parameter, r.value, r.status,
                 opt(r.summary.convergence_time), opt(r.summary.queue_clear_time));
    }
  }

  RunManifest manifest;
  manifest.scenario = sc.label;
  manifest.output_dir = out;
  manifest.commands = opts.command_line;
  manifest.seed = base.rng_seed;
  manifest.seed_overridden = opts.seed.has_value();
  write_manifest(manifest, listed);
  return kSuccess;
}

}  // namespace hotlane::io
