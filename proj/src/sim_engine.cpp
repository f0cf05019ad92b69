#include "hotlane/sim_engine.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "hotlane/pricing_controller.hpp"
#include "hotlane/queue_dynamics.hpp"

namespace hotlane {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string msg = "invalid scenario";
  for (const auto& e : errors) msg += "; " + e;
  return msg;
}

void validate_or_throw(const ScenarioConfig& cfg) {
  auto rep = validate_scenario(cfg);
  if (!rep.ok()) throw ScenarioError(std::move(rep.errors));
}

void guard_finite(std::int64_t step, const LaneState& lanes, const ControllerState& ctrl) {
  const auto bad = [&](const char* name, double v) {
    if (!std::isfinite(v)) throw NumericAbortError(step, fmt::format("{} became {} at step {}", name, v, step));
  };
  bad("lambda1", lanes.lambda1);
  bad("lambda2", lanes.lambda2);
  bad("a", ctrl.a);
  bad("b", ctrl.b);
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::invalid_argument(join_errors(errors)), errors_(std::move(errors)) {}

NumericAbortError::NumericAbortError(std::int64_t step, const std::string& what)
    : std::runtime_error(what), step_(step) {}

DemandSample draw_poisson_rates(const PoissonDemand& spec, Rng& rng) {
  std::poisson_distribution<long long> n1(spec.mean1 * spec.resample_every);
  std::poisson_distribution<long long> n2(spec.mean2 * spec.resample_every);
  const double c1 = static_cast<double>(n1(rng));
  const double c2 = static_cast<double>(n2(rng));
  return {c1 / spec.resample_every, c2 / spec.resample_every};
}

DemandGenerator::DemandGenerator(DemandSpec spec, std::uint64_t seed) : spec_(std::move(spec)), rng_(seed) {
  if (const auto* c = std::get_if<ConstantDemand>(&spec_)) held_ = {c->q1, c->q2};
}

DemandSample DemandGenerator::sample(double t) {
  const auto* p = std::get_if<PoissonDemand>(&spec_);
  if (p == nullptr) return held_;
  // Boundaries are computed from the block index to avoid drift.
  while (t >= next_boundary_ - 1e-9 * p->resample_every) {
    held_ = draw_poisson_rates(*p, rng_);
    ++blocks_drawn_;
    next_boundary_ = static_cast<double>(blocks_drawn_) * p->resample_every;
  }
  return held_;
}

SimTrace run(const ScenarioConfig& cfg) {
  validate_or_throw(cfg);
  const auto model = make_choice_model(cfg.choice_model);
  return run(cfg, *model);
}

SimTrace run(const ScenarioConfig& cfg, const LaneChoiceModel& model) {
  validate_or_throw(cfg);
  const auto n = step_count(cfg);
  SimTrace trace{cfg, cfg.rng_seed, {}};
  trace.records.reserve(static_cast<std::size_t>(n));

  DemandGenerator demand_gen(cfg.demand, cfg.rng_seed);
  LaneState lanes = cfg.initial_lanes;
  ControllerState ctrl = cfg.initial_controller;
  const auto& caps = cfg.capacities;

  for (std::int64_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    const DemandSample d = demand_gen.sample(t);
    const double w = queueing_time_diff(lanes, caps);
    const Price u = compute_price(ctrl, w, cfg.price_floor_enabled);
    const FlowSplit split = flow_and_residual(model, u.applied, w, d, caps);

    trace.records.push_back({t, d.q1, d.q2, split.q3, w, u.raw, u.applied, split.p, split.zeta, lanes.lambda1,
                             lanes.lambda2, ctrl.a, ctrl.b, u.clamped, split.degenerate});

    const double lambda1 = lanes.lambda1;
    lanes = queue_step(lanes, d, split.zeta, caps, cfg.dt);
    ctrl = controller_step(ctrl, lambda1, split.zeta, cfg.gains, cfg.dt);
    guard_finite(k, lanes, ctrl);
  }
  return trace;
}

SimTrace run_open_loop(const ScenarioConfig& cfg, const OpenLoopProbe& probe) {
  validate_or_throw(cfg);
  const auto model = make_choice_model(cfg.choice_model);
  const auto n = step_count(cfg);
  SimTrace trace{cfg, cfg.rng_seed, {}};
  trace.records.reserve(static_cast<std::size_t>(n));

  DemandGenerator demand_gen(cfg.demand, cfg.rng_seed);
  LaneState lanes = cfg.initial_lanes;
  const ControllerState ctrl = cfg.initial_controller;
  const auto& caps = cfg.capacities;

  for (std::int64_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    const DemandSample d = demand_gen.sample(t);
    const double w = queueing_time_diff(lanes, caps);

    double q3 = probe.level;
    if (probe.hold == OpenLoopProbe::Hold::kResidual) q3 = caps.c1 - d.q1 - probe.level;
    q3 = std::clamp(q3, 0.0, d.q2);
    const double zeta = caps.c1 - d.q1 - q3;
    const double p = d.q2 > 0.0 ? q3 / d.q2 : 0.0;

    double u = 0.0;
    bool degenerate = true;
    try {
      u = model->price_for_fraction(p, w, {d, caps});
      degenerate = false;
    } catch (const OutOfRangeError&) {
    }

    trace.records.push_back({t, d.q1, d.q2, q3, w, u, u, p, zeta, lanes.lambda1, lanes.lambda2, ctrl.a, ctrl.b,
                             false, degenerate});
    lanes = queue_step(lanes, d, zeta, caps, cfg.dt);
    guard_finite(k, lanes, ctrl);
  }
  return trace;
}

std::optional<double> detect_convergence(const SimTrace& trace, double eps_lambda, double eps_zeta) {
  const auto& recs = trace.records;
  if (recs.empty()) return std::nullopt;
  auto inside = [&](const StepRecord& r) { return r.lambda1 <= eps_lambda && std::abs(r.zeta) <= eps_zeta; };
  std::size_t i = recs.size();
  while (i > 0 && inside(recs[i - 1])) --i;
  if (i == recs.size()) return std::nullopt;
  return recs[i].t;
}

}  // namespace hotlane
