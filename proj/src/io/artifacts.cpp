#include "hotlane/io/artifacts.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <memory>

#include <fmt/core.h>
#include <fmt/ostream.h>
#include <openssl/evp.h>

#include "hotlane/analysis.hpp"
#include "json.hpp"

namespace hotlane::io {

void write_trace_csv(std::ostream& out, const std::vector<StepRecord>& records) {
  out << kTraceHeader << '\n';
  for (const auto& r : records) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.t, r.q1, r.q2, r.q3, r.w, r.u_raw, r.u_applied,
               r.p, r.zeta, r.lambda1, r.lambda2, r.a, r.b, r.clamped ? 1 : 0);
  }
}

void write_phase_csv(std::ostream& out, const std::vector<StepRecord>& records) {
  out << "lambda1,zeta\n";
  for (const auto& r : records) fmt::print(out, "{},{}\n", r.lambda1, r.zeta);
}

void write_vot_estimates_csv(std::ostream& out, const std::vector<VotPointEstimate>& estimates) {
  out << "t,pi_hat\n";
  for (const auto& e : estimates) fmt::print(out, "{},{}\n", e.t, e.pi_hat);
}

void write_cdf_csv(std::ostream& out, const std::vector<EmpiricalCdfPoint>& points, bool with_time,
                   const std::vector<double>& times) {
  out << (with_time ? "t,x,F_hat\n" : "x,F_hat\n");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (with_time) fmt::print(out, "{},", times.at(i));
    fmt::print(out, "{},{}\n", points[i].x, points[i].f_hat);
  }
}

void write_pdf_csv(std::ostream& out, const std::vector<DensityPoint>& density) {
  out << "x,f_hat\n";
  for (const auto& d : density) fmt::print(out, "{},{}\n", d.x, d.f_hat);
}

RunSummary summarize(const SimTrace& trace) {
  RunSummary s;
  const auto& cfg = trace.config;
  s.scenario = cfg.name;
  s.seed = trace.seed;
  s.steps = static_cast<std::int64_t>(trace.records.size());
  s.convergence_time = detect_convergence(trace, kSummaryEpsLambda, kSummaryEpsZeta);
  s.queue_clear_time = detect_convergence(trace, kSummaryEpsLambda, std::numeric_limits<double>::infinity());
  for (const auto& r : trace.records) {
    s.max_lambda1 = std::max(s.max_lambda1, r.lambda1);
    s.clamped_steps += r.clamped ? 1 : 0;
    s.degenerate_steps += r.degenerate ? 1 : 0;
  }
  if (!trace.records.empty()) {
    s.final_a = trace.records.back().a;
    s.final_b = trace.records.back().b;
  }
  const double window_start = 0.75 * cfg.horizon;
  if (trace.records.size() >= 2) s.price_slope = price_slope(trace, window_start);

  if (cfg.estimation.enabled && std::holds_alternative<LogitSpec>(cfg.choice_model)) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& e : harvest_logit_estimates(trace.records, cfg.estimation.alpha)) {
      if (e.t < window_start) continue;
      sum += e.pi_hat;
      ++n;
    }
    if (n > 0) s.mean_pi_hat = sum / static_cast<double>(n);
  }
  return s;
}

void write_summary(std::ostream& out, const RunSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string("none"); };
  fmt::print(out, "scenario: {}\n", s.scenario.empty() ? "(unnamed)" : s.scenario);
  fmt::print(out, "seed: {}\n", s.seed);
  fmt::print(out, "steps: {}\n", s.steps);
  fmt::print(out, "converged: {}\n", s.convergence_time ? "yes" : "no");
  fmt::print(out, "convergence_time_min: {}\n", opt(s.convergence_time));
  fmt::print(out, "queue_clear_time_min: {}\n", opt(s.queue_clear_time));
  fmt::print(out, "max_lambda1_veh: {}\n", s.max_lambda1);
  fmt::print(out, "final_a: {}\n", s.final_a);
  fmt::print(out, "final_b: {}\n", s.final_b);
  fmt::print(out, "price_slope_per_min: {}\n", s.price_slope);
  fmt::print(out, "clamped_steps: {}\n", s.clamped_steps);
  fmt::print(out, "degenerate_steps: {}\n", s.degenerate_steps);
  if (s.mean_pi_hat) fmt::print(out, "mean_pi_hat: {}\n", *s.mean_pi_hat);
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read '{}' for checksum", path.string()));

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

void write_manifest(RunManifest manifest, const std::vector<std::string>& files) {
  manifest.artifacts.clear();
  for (const auto& f : files) {
    const auto p = manifest.output_dir / f;
    manifest.artifacts.push_back({f, sha256_file(p), std::filesystem::file_size(p)});
  }
  nlohmann::ordered_json j;
  j["scenario"] = manifest.scenario;
  j["output_dir"] = manifest.output_dir.string();
  j["commands"] = manifest.commands;
  j["seed"] = manifest.seed;
  j["seed_overridden"] = manifest.seed_overridden;
  j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& a : manifest.artifacts) {
    j["artifacts"].push_back({{"file", a.file}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  }
  std::ofstream out(manifest.output_dir / "manifest.json");
  out << j.dump(2) << '\n';
}

}  // namespace hotlane::io
