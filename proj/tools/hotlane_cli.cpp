// hotlane: command-line driver for the HOT lane pricing simulator.
//
//   hotlane run --scenario FILE [--out DIR] [--seed N] [--require-convergence]
//   hotlane reproduce --figure ID [--out DIR]
//   hotlane sweep --scenario FILE --sweep PARAM --grid V1,V2,... [--out DIR]

#include <iostream>

#include "CLI11.hpp"
#include "hotlane/io/commands.hpp"

int main(int argc, char** argv) {
  namespace io = hotlane::io;

  CLI::App app{"Closed-loop simulator for dynamic HOT lane pricing"};
  app.require_subcommand(1);

  io::CommonOptions opts;
  for (int i = 0; i < argc; ++i) opts.command_line.emplace_back(argv[i]);

  std::string scenario;
  std::string out;
  std::uint64_t seed = 0;
  std::string figure;
  std::string sweep_param;
  std::string grid_text;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out, "Output directory (default: $HOTLANE_OUT_ROOT/<name>)");
    cmd->add_option("--seed", seed, "Override the scenario RNG seed");
    cmd->add_flag("--require-convergence", opts.require_convergence, "Exit with status 4 if the run does not converge");
  };

  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("--scenario", scenario, "Scenario YAML file or bundled id")->required();
  add_common(run);

  auto* reproduce = app.add_subcommand("reproduce", "Run a bundled scenario and emit plot-ready CSVs");
  reproduce->add_option("--figure", figure, "One of: logit-constant, logit-poisson, ue-constant, ue-poisson, "
                                            "logit-phase, ue-phase")
      ->required();
  add_common(reproduce);

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter over a grid");
  sweep->add_option("--scenario", scenario, "Base scenario YAML file or bundled id")->required();
  sweep->add_option("--sweep", sweep_param, "Parameter: q3, k1, k2, k3, k4, k12, k34, dt, horizon, seed")->required();
  sweep->add_option("--grid", grid_text, "Comma-separated values")->required();
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? io::kSuccess : io::kUsage;
  }

  auto bind = [&](CLI::App* cmd) {
    if (!out.empty()) opts.out_dir = out;
    if (cmd->count("--seed") > 0) opts.seed = seed;
  };

  try {
    if (run->parsed()) {
      bind(run);
      return io::cmd_run(scenario, opts, std::cerr);
    }
    if (reproduce->parsed()) {
      bind(reproduce);
      return io::cmd_reproduce(figure, opts, std::cerr);
    }
    bind(sweep);
    std::vector<double> grid;
    try {
      grid = io::parse_grid(grid_text);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return io::kUsage;
    }
    return io::cmd_sweep(scenario, sweep_param, grid, opts, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io::kValidation;
  }
}
