#pragma once

// The CLI subcommands as library calls. Each returns a process exit code and
// writes diagnostics to `log`.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hotlane::io {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kValidation = 2,
  kNumericAbort = 3,
  kNoConvergence = 4,
};

/// Environment variable naming the default output root.
inline constexpr const char* kOutRootEnv = "HOTLANE_OUT_ROOT";

/// $HOTLANE_OUT_ROOT/<leaf>, or ./hotlane-out/<leaf> when unset.
std::filesystem::path default_output_dir(const std::string& leaf);

struct CommonOptions {
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
  bool require_convergence = false;
  std::vector<std::string> command_line;  // echoed into the manifest
};

/// Runs a scenario file and writes trace.csv, estimates (when enabled),
/// summary.txt and manifest.json.
int cmd_run(const std::filesystem::path& scenario_file, const CommonOptions& opts, std::ostream& log);

/// Valid ids for cmd_reproduce.
const std::vector<std::string>& figure_ids();

/// Runs a bundled scenario. *-phase ids emit phase.csv (lambda1, zeta pairs).
int cmd_reproduce(const std::string& figure_id, const CommonOptions& opts, std::ostream& log);

/// Parameters accepted by cmd_sweep.
const std::vector<std::string>& sweep_parameters();

/// Comma-separated list of numbers. Throws std::invalid_argument.
std::vector<double> parse_grid(const std::string& text);

/// One run per grid value of `parameter`, executed concurrently; writes
/// sweep.csv. Parameter "q3" is the fixed-share cost sweep and writes
/// q3,phi2,phi3,phi rows.
int cmd_sweep(const std::filesystem::path& base_scenario, const std::string& parameter, const std::vector<double>& grid,
              const CommonOptions& opts, std::ostream& log);

}  // namespace hotlane::io
