#pragma once

// Plot-ready CSV artifacts, run summaries and the checksummed run manifest.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hotlane/estimation.hpp"
#include "hotlane/sim_engine.hpp"

namespace hotlane::io {

/// Column order of trace.csv. Part of the file format; do not reorder.
inline constexpr const char* kTraceHeader = "t,q1,q2,q3,w,u_raw,u_applied,p,zeta,lambda1,lambda2,a,b,clamped";

void write_trace_csv(std::ostream& out, const std::vector<StepRecord>& records);
void write_phase_csv(std::ostream& out, const std::vector<StepRecord>& records);
void write_vot_estimates_csv(std::ostream& out, const std::vector<VotPointEstimate>& estimates);
void write_cdf_csv(std::ostream& out, const std::vector<EmpiricalCdfPoint>& points, bool with_time,
                   const std::vector<double>& times = {});
void write_pdf_csv(std::ostream& out, const std::vector<DensityPoint>& density);

struct RunSummary {
  std::string scenario;
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
  std::optional<double> convergence_time;  // eps = (0.05 veh, 0.05 veh/min)
  std::optional<double> queue_clear_time;  // lambda1 <= 0.05 from then on
  double max_lambda1 = 0.0;
  double final_a = 0.0;
  double final_b = 0.0;
  double price_slope = 0.0;  // least squares over the last 25% of the horizon
  std::int64_t clamped_steps = 0;
  std::int64_t degenerate_steps = 0;
  std::optional<double> mean_pi_hat;  // logit estimation, last 25% of the horizon
};

inline constexpr double kSummaryEpsLambda = 0.05;
inline constexpr double kSummaryEpsZeta = 0.05;

RunSummary summarize(const SimTrace& trace);
void write_summary(std::ostream& out, const RunSummary& s);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

struct ManifestEntry {
  std::string file;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string scenario;  // path or bundled id
  std::filesystem::path output_dir;
  std::vector<std::string> commands;
  std::uint64_t seed = 0;
  bool seed_overridden = false;
  std::vector<ManifestEntry> artifacts;
};

/// Checksums every listed artifact and writes manifest.json into output_dir.
void write_manifest(RunManifest manifest, const std::vector<std::string>& files);

}  // namespace hotlane::io
