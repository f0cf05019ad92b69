#include "hotlane/domain.hpp"

#include <cmath>

#include <fmt/core.h>

namespace hotlane {
namespace {

// Slope of a piecewise-linear table at x, averaging the two segments when x
// falls on a knot. Outside the grid the end segment is used.
double table_slope_at(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  const std::size_t n = xs.size();
  auto seg = [&](std::size_t i) { return (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]); };
  if (x <= xs.front()) return seg(0);
  if (x >= xs.back()) return seg(n - 2);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (x == xs[i + 1] && i + 2 < n) return 0.5 * (seg(i) + seg(i + 1));
    if (x < xs[i + 1]) return seg(i);
  }
  return seg(n - 2);
}

}  // namespace

std::vector<std::string> check_affine_tables(const AffineSpec& spec) {
  std::vector<std::string> errs;
  const auto n = spec.zeta.size();
  if (n < 2) {
    errs.emplace_back("affine model: tables need at least two points");
    return errs;
  }
  if (spec.a.size() != n || spec.b.size() != n) {
    errs.emplace_back("affine model: zeta, A and B tables must have equal length");
    return errs;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(spec.zeta[i]) || !std::isfinite(spec.a[i]) || !std::isfinite(spec.b[i])) {
      errs.push_back(fmt::format("affine model: non-finite table entry at index {}", i));
      return errs;
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(spec.zeta[i + 1] > spec.zeta[i])) {
      errs.push_back(fmt::format("affine model: zeta grid not strictly increasing at index {}", i + 1));
    }
    if (spec.a[i + 1] < spec.a[i]) {
      errs.push_back(fmt::format("affine model: A decreases between index {} and {}", i, i + 1));
    }
    if (spec.b[i + 1] < spec.b[i]) {
      errs.push_back(fmt::format("affine model: B decreases between index {} and {}", i, i + 1));
    }
  }
  if (errs.empty()) {
    const double s = table_slope_at(spec.zeta, spec.a, 0.0) + table_slope_at(spec.zeta, spec.b, 0.0);
    if (!(s > 0.0)) errs.emplace_back("affine model: A'(0) + B'(0) must be positive");
  }
  return errs;
}

namespace {

void check_positive(std::vector<std::string>& errs, const char* name, double v) {
  if (!(std::isfinite(v) && v > 0.0)) errs.push_back(fmt::format("{} must be positive and finite (got {})", name, v));
}

void check_nonnegative(std::vector<std::string>& errs, const char* name, double v) {
  if (!(std::isfinite(v) && v >= 0.0)) errs.push_back(fmt::format("{} must be non-negative and finite (got {})", name, v));
}

void check_choice_model(std::vector<std::string>& errs, const ChoiceModelSpec& spec) {
  if (const auto* logit = std::get_if<LogitSpec>(&spec)) {
    check_positive(errs, "choice_model.pi_star", logit->pi_star);
    check_positive(errs, "choice_model.alpha_star", logit->alpha_star);
  } else if (const auto* ue = std::get_if<UeSpec>(&spec)) {
    if (const auto* e = std::get_if<ExponentialVotSpec>(&ue->distribution)) {
      check_positive(errs, "choice_model.distribution.rate", e->rate);
    } else {
      const auto& burr = std::get<BurrVotSpec>(ue->distribution);
      check_positive(errs, "choice_model.distribution.pi_star", burr.pi_star);
      check_positive(errs, "choice_model.distribution.gamma", burr.gamma);
    }
  } else {
    for (auto& e : check_affine_tables(std::get<AffineSpec>(spec))) errs.push_back(std::move(e));
  }
}

}  // namespace

DemandSample nominal_demand(const DemandSpec& spec) {
  if (const auto* c = std::get_if<ConstantDemand>(&spec)) return {c->q1, c->q2};
  const auto& p = std::get<PoissonDemand>(spec);
  return {p.mean1, p.mean2};
}

ValidationReport validate_scenario(const ScenarioConfig& cfg) {
  ValidationReport rep;
  auto& errs = rep.errors;

  check_positive(errs, "capacities.c1", cfg.capacities.c1);
  check_positive(errs, "capacities.c2", cfg.capacities.c2);
  check_positive(errs, "gains.k1", cfg.gains.k1);
  check_positive(errs, "gains.k2", cfg.gains.k2);
  check_positive(errs, "gains.k3", cfg.gains.k3);
  check_positive(errs, "gains.k4", cfg.gains.k4);
  check_nonnegative(errs, "initial_lanes.lambda1", cfg.initial_lanes.lambda1);
  check_nonnegative(errs, "initial_lanes.lambda2", cfg.initial_lanes.lambda2);
  if (!std::isfinite(cfg.initial_controller.a)) errs.emplace_back("initial_controller.a must be finite");
  if (!std::isfinite(cfg.initial_controller.b)) errs.emplace_back("initial_controller.b must be finite");
  check_positive(errs, "dt", cfg.dt);
  check_positive(errs, "horizon", cfg.horizon);

  if (std::isfinite(cfg.dt) && cfg.dt > 0.0 && std::isfinite(cfg.horizon) && cfg.horizon > 0.0) {
    const double ratio = cfg.horizon / cfg.dt;
    const double steps = std::round(ratio);
    if (steps < 1.0) {
      errs.push_back(fmt::format("horizon {} is shorter than one step of {}", cfg.horizon, cfg.dt));
    } else if (std::abs(steps * cfg.dt - cfg.horizon) > 1e-9 * cfg.horizon) {
      errs.push_back(fmt::format("horizon/dt = {} is not a whole number of steps", ratio));
    }
  }

  if (const auto* c = std::get_if<ConstantDemand>(&cfg.demand)) {
    check_nonnegative(errs, "demand.q1", c->q1);
    check_nonnegative(errs, "demand.q2", c->q2);
  } else {
    const auto& p = std::get<PoissonDemand>(cfg.demand);
    check_positive(errs, "demand.mean1", p.mean1);
    check_positive(errs, "demand.mean2", p.mean2);
    check_positive(errs, "demand.resample_every", p.resample_every);
    if (std::isfinite(p.resample_every) && p.resample_every + 1e-12 < cfg.dt) {
      errs.push_back(fmt::format("demand.resample_every ({}) must be at least dt ({})", p.resample_every, cfg.dt));
    }
  }

  check_choice_model(errs, cfg.choice_model);
  if (cfg.estimation.enabled) check_positive(errs, "estimation.alpha", cfg.estimation.alpha);

  // Standing assumptions. A violation keeps the run legal.
  const auto d = nominal_demand(cfg.demand);
  const auto& cap = cfg.capacities;
  if (std::isfinite(d.q1) && d.q1 >= cap.c1) {
    rep.warnings.push_back(fmt::format("HOV demand exceeds HOT capacity (q1={} >= c1={})", d.q1, cap.c1));
  }
  if (std::isfinite(d.q1 + d.q2) && d.q1 + d.q2 <= cap.c1 + cap.c2) {
    rep.warnings.push_back(
        fmt::format("system is not congested (q1+q2={} <= c1+c2={})", d.q1 + d.q2, cap.c1 + cap.c2));
  }
  return rep;
}

std::int64_t step_count(const ScenarioConfig& cfg) {
  return static_cast<std::int64_t>(std::llround(cfg.horizon / cfg.dt));
}

}  // namespace hotlane
