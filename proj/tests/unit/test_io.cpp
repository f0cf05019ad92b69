#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "hotlane/io/artifacts.hpp"
#include "hotlane/io/commands.hpp"
#include "hotlane/io/scenario_file.hpp"
#include "hotlane/scenarios.hpp"
#include "json.hpp"

using namespace hotlane;
using namespace hotlane::io;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = HOTLANE_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hotlane_test_" + name);
  fs::remove_all(dir);
  return dir;
}

fs::path write_text(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream(dir / name) << text;
  return dir / name;
}

void expect_same(const ScenarioConfig& x, const ScenarioConfig& y) {
  EXPECT_EQ(format_scenario(x), format_scenario(y));
  EXPECT_EQ(x.name, y.name);
  EXPECT_EQ(x.capacities.c1, y.capacities.c1);
  EXPECT_EQ(x.capacities.c2, y.capacities.c2);
  EXPECT_EQ(x.gains.k1, y.gains.k1);
  EXPECT_EQ(x.gains.k4, y.gains.k4);
  EXPECT_EQ(x.initial_lanes.lambda1, y.initial_lanes.lambda1);
  EXPECT_EQ(x.initial_controller.b, y.initial_controller.b);
  EXPECT_EQ(x.dt, y.dt);
  EXPECT_EQ(x.horizon, y.horizon);
  EXPECT_EQ(x.rng_seed, y.rng_seed);
  EXPECT_EQ(x.price_floor_enabled, y.price_floor_enabled);
  EXPECT_EQ(x.demand.index(), y.demand.index());
  EXPECT_EQ(x.choice_model.index(), y.choice_model.index());
  EXPECT_EQ(x.estimation.alpha, y.estimation.alpha);
}

const char* kMinimal = R"(
capacities: {c1: 30, c2: 30}
gains: {k1: 0.1, k2: 0.1, k3: 0.2, k4: 0.2}
initial_lanes: {lambda1: 1, lambda2: 2}
initial_controller: {a: 0.25, b: 0.1}
dt: 0.05
horizon: 2
demand: {type: constant, q1: 10, q2: 60}
choice_model: {type: logit, pi_star: 0.5, alpha_star: 1}
)";

}  // namespace

TEST(ScenarioFile, BundledFilesMatchBuiltIns) {
  for (const auto& name : scenarios::names()) {
    const auto path = kRoot / "scenarios" / (name + ".yaml");
    ASSERT_TRUE(fs::exists(path)) << path;
    expect_same(load_scenario(path), scenarios::by_name(name));
  }
}

TEST(ScenarioFile, MinimalFileUsesDefaults) {
  const auto cfg = parse_scenario(kMinimal);
  EXPECT_EQ(cfg.rng_seed, 0u);
  EXPECT_TRUE(cfg.price_floor_enabled);
  EXPECT_TRUE(cfg.estimation.enabled);
  EXPECT_EQ(cfg.estimation.alpha, 1.0);
  EXPECT_EQ(cfg.name, "");
}

TEST(ScenarioFile, RandomRoundTripIsLossless) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(1e-6, 100.0);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < 200; ++i) {
    ScenarioConfig cfg;
    cfg.name = "case-" + std::to_string(i);
    cfg.capacities = {u(rng), u(rng)};
    cfg.gains = {u(rng), u(rng), u(rng), u(rng)};
    cfg.initial_lanes = {u(rng), u(rng)};
    cfg.initial_controller = {u(rng) - 50.0, u(rng) - 50.0};
    cfg.dt = u(rng) / 1000.0;
    cfg.horizon = cfg.dt * 1000;
    cfg.rng_seed = rng();
    cfg.price_floor_enabled = i % 2 == 0;
    if (i % 3 == 0) cfg.demand = PoissonDemand{u(rng), u(rng), u(rng)};
    else cfg.demand = ConstantDemand{u(rng), u(rng)};
    switch (pick(rng)) {
      case 0: cfg.choice_model = LogitSpec{u(rng), u(rng)}; break;
      case 1: cfg.choice_model = UeSpec{ExponentialVotSpec{u(rng)}}; break;
      case 2: cfg.choice_model = UeSpec{BurrVotSpec{u(rng), u(rng)}}; break;
      default: cfg.choice_model = AffineSpec{{-u(rng), 0.0, u(rng)}, {u(rng), 200, 300}, {-u(rng), 0.0, u(rng)}};
    }
    cfg.estimation = {i % 5 != 0, u(rng)};

    const auto back = parse_scenario(format_scenario(cfg));
    expect_same(cfg, back);
    if (const auto* p = std::get_if<PoissonDemand>(&cfg.demand)) {
      EXPECT_EQ(p->resample_every, std::get<PoissonDemand>(back.demand).resample_every);
    }
    if (const auto* a = std::get_if<AffineSpec>(&cfg.choice_model)) {
      EXPECT_EQ(a->zeta, std::get<AffineSpec>(back.choice_model).zeta);
      EXPECT_EQ(a->b, std::get<AffineSpec>(back.choice_model).b);
    }
  }
}

TEST(ScenarioFile, SchemaErrors) {
  EXPECT_THROW(parse_scenario("capacities: [1, 2"), SchemaError);
  EXPECT_THROW(parse_scenario("- 1\n- 2\n"), SchemaError);
  EXPECT_THROW(parse_scenario(std::string(kMinimal) + "horizn: 3\n"), SchemaError);
  EXPECT_THROW(parse_scenario(std::string(kMinimal) + "seed: many\n"), SchemaError);

  std::string missing = kMinimal;
  missing.replace(missing.find("dt: 0.05\n"), 9, "");
  try {
    parse_scenario(missing);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("'dt'"), std::string::npos);
  }

  std::string bad_model = kMinimal;
  bad_model.replace(bad_model.find("type: logit"), 11, "type: probit");
  EXPECT_THROW(parse_scenario(bad_model), SchemaError);
  EXPECT_THROW(load_scenario("/nonexistent/file.yaml"), SchemaError);
}

TEST(Artifacts, TraceCsvMatchesGoldenFile) {
  auto cfg = scenarios::logit_constant();
  cfg.horizon = 3 * cfg.dt;
  std::ostringstream out;
  write_trace_csv(out, run(cfg).records);
  EXPECT_EQ(out.str(), slurp(kRoot / "tests" / "golden" / "logit_constant_head.csv"));
  EXPECT_EQ(first_line(out.str()), "t,q1,q2,q3,w,u_raw,u_applied,p,zeta,lambda1,lambda2,a,b,clamped");
}

TEST(Artifacts, SecondaryCsvHeaders) {
  std::ostringstream phase, est, cdf_t, cdf, pdf;
  write_phase_csv(phase, {});
  write_vot_estimates_csv(est, {});
  write_cdf_csv(cdf_t, {}, true);
  write_cdf_csv(cdf, {}, false);
  write_pdf_csv(pdf, {});
  EXPECT_EQ(phase.str(), "lambda1,zeta\n");
  EXPECT_EQ(est.str(), "t,pi_hat\n");
  EXPECT_EQ(cdf_t.str(), "t,x,F_hat\n");
  EXPECT_EQ(cdf.str(), "x,F_hat\n");
  EXPECT_EQ(pdf.str(), "x,f_hat\n");
}

TEST(Artifacts, Sha256KnownVector) {
  const auto p = write_text(fresh_dir("sha"), "abc.txt", "abc");
  EXPECT_EQ(sha256_file(p), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Commands, DefaultOutputDirHonoursEnvironment) {
  ::setenv(kOutRootEnv, "/tmp/somewhere", 1);
  EXPECT_EQ(default_output_dir("x"), fs::path("/tmp/somewhere/x"));
  ::unsetenv(kOutRootEnv);
  EXPECT_EQ(default_output_dir("x"), fs::path("hotlane-out/x"));
}

TEST(Commands, RunWritesChecksummedArtifacts) {
  const auto dir = fresh_dir("run");
  CommonOptions opts;
  opts.out_dir = dir;
  opts.command_line = {"hotlane", "run"};
  std::ostringstream log;
  ASSERT_EQ(cmd_run(kRoot / "scenarios" / "ue-constant.yaml", opts, log), kSuccess) << log.str();

  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 1);
  EXPECT_FALSE(manifest["seed_overridden"].get<bool>());
  std::set<std::string> listed;
  for (const auto& a : manifest["artifacts"]) {
    const auto file = a["file"].get<std::string>();
    listed.insert(file);
    EXPECT_EQ(a["sha256"].get<std::string>(), sha256_file(dir / file)) << file;
    EXPECT_EQ(a["bytes"].get<std::uintmax_t>(), fs::file_size(dir / file));
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name != "manifest.json") {
      EXPECT_TRUE(listed.count(name)) << name << " not in manifest";
    }
  }
  for (const char* f : {"trace.csv", "estimates.csv", "cdf.csv", "pdf.csv", "summary.txt"}) EXPECT_TRUE(listed.count(f)) << f;
  EXPECT_EQ(first_line(slurp(dir / "estimates.csv")), "t,x,F_hat");
}

TEST(Commands, SeedOverrideIsRecorded) {
  const auto dir = fresh_dir("seed");
  CommonOptions opts;
  opts.out_dir = dir;
  opts.seed = 77;
  std::ostringstream log;
  ASSERT_EQ(cmd_run("logit-poisson", opts, log), kSuccess);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 77);
  EXPECT_TRUE(manifest["seed_overridden"].get<bool>());
  EXPECT_NE(slurp(dir / "summary.txt").find("seed: 77"), std::string::npos);
}

TEST(Commands, ExitCodes) {
  const auto dir = fresh_dir("codes");
  CommonOptions opts;
  opts.out_dir = dir / "out";
  std::ostringstream log;

  std::string invalid = kMinimal;
  invalid.replace(invalid.find("c1: 30"), 6, "c1: -3");
  EXPECT_EQ(cmd_run(write_text(dir, "invalid.yaml", invalid), opts, log), kValidation);
  EXPECT_EQ(cmd_run(write_text(dir, "broken.yaml", "dt: [\n"), opts, log), kValidation);
  EXPECT_EQ(cmd_run(dir / "missing.yaml", opts, log), kValidation);

  std::string blowup = kMinimal;
  blowup.replace(blowup.find("k1: 0.1"), 7, "k1: 1e300");
  blowup.replace(blowup.find("lambda1: 1"), 10, "lambda1: 1e10");
  EXPECT_EQ(cmd_run(write_text(dir, "blowup.yaml", blowup), opts, log), kNumericAbort);

  opts.require_convergence = true;
  EXPECT_EQ(cmd_run(write_text(dir, "short.yaml", kMinimal), opts, log), kNoConvergence);
  opts.require_convergence = false;
  EXPECT_EQ(cmd_run(dir / "short.yaml", opts, log), kSuccess);

  EXPECT_EQ(cmd_reproduce("figure-9", opts, log), kUsage);
  EXPECT_NE(log.str().find("logit-phase"), std::string::npos);
  EXPECT_EQ(cmd_sweep("logit-constant", "k9", {1.0}, opts, log), kUsage);
  EXPECT_EQ(cmd_sweep("logit-constant", "k1", {}, opts, log), kUsage);
  EXPECT_EQ(cmd_sweep("logit-constant", "q3", {25.0}, opts, log), kValidation);
}

TEST(Commands, ReproducePhasePortrait) {
  const auto dir = fresh_dir("phase");
  CommonOptions opts;
  opts.out_dir = dir;
  std::ostringstream log;
  ASSERT_EQ(cmd_reproduce("logit-phase", opts, log), kSuccess);
  const auto text = slurp(dir / "phase.csv");
  EXPECT_EQ(first_line(text), "lambda1,zeta");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 12001);
}

TEST(Commands, ParseGrid) {
  EXPECT_EQ(parse_grid("0, 5,10 ,1e1"), (std::vector<double>{0, 5, 10, 10}));
  EXPECT_THROW(parse_grid(""), std::invalid_argument);
  EXPECT_THROW(parse_grid("1,x"), std::invalid_argument);
  EXPECT_THROW(parse_grid("1,2y"), std::invalid_argument);
}

TEST(Commands, SweepWritesOneRowPerValue) {
  const auto dir = fresh_dir("sweep");
  CommonOptions opts;
  opts.out_dir = dir;
  std::ostringstream log;
  ASSERT_EQ(cmd_sweep("logit-constant", "k12", {0.05, 0.1, 0.2, 0.4}, opts, log), kSuccess);
  std::istringstream csv(slurp(dir / "sweep.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "k12,status,convergence_time,queue_clear_time,max_lambda1,final_a,final_b,price_slope");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_NE(line.find(",ok,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 4);
}
