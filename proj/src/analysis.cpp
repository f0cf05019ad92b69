#include "hotlane/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

namespace hotlane {

CostBreakdown total_cost(const SimTrace& trace, const LaneChoiceModel& model) {
  const double dt = trace.config.dt;
  const double c2 = trace.config.capacities.c2;
  CostBreakdown cost;
  for (const auto& r : trace.records) {
    cost.phi3 += r.q3 * r.u_applied * dt;
    const double staying = r.q2 - r.q3;
    if (staying <= 0.0 || r.lambda2 <= 0.0) continue;
    const auto vot = model.staying_vot(r.u_applied, r.w);
    if (!vot) throw AssumptionError("lane-choice model has no VOT notion; GP queueing cost is undefined");
    cost.phi2 += staying * (r.lambda2 / c2) * *vot * dt;
  }
  cost.phi = cost.phi2 + cost.phi3;
  return cost;
}

Theorem1Result theorem1_sweep(const ScenarioConfig& base, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("fixed-share cost sweep needs a non-empty grid");
  const auto* demand = std::get_if<ConstantDemand>(&base.demand);
  if (demand == nullptr) throw AssumptionError("fixed-share cost sweep needs constant demand");
  const double q3_max = base.capacities.c1 - demand->q1;
  for (double q3 : grid) {
    if (!(q3 >= 0.0 && q3 <= q3_max)) {
      throw std::invalid_argument(fmt::format("q3 level {} is infeasible; it must lie in [0, {}]", q3, q3_max));
    }
  }

  const auto model = make_choice_model(base.choice_model);
  Theorem1Result res;
  for (double q3 : grid) {
    const auto trace = run_open_loop(base, {OpenLoopProbe::Hold::kPayingFlow, q3});
    res.points.push_back({q3, total_cost(trace, *model)});
  }
  const auto best = std::min_element(res.points.begin(), res.points.end(),
                                     [](const auto& l, const auto& r) { return l.cost.phi < r.cost.phi; });
  res.argmin_q3 = best->q3;
  res.argmin_at_capacity = best->q3 == *std::max_element(grid.begin(), grid.end());
  return res;
}

double equilibrium_profile(const DemandSample& demand, const Capacities& caps) {
  const double excess = demand.q1 + demand.q2 - caps.c1 - caps.c2;
  if (!(excess > 0.0)) {
    throw AssumptionError(fmt::format("demand {} does not exceed total capacity {}", demand.q1 + demand.q2,
                                      caps.c1 + caps.c2));
  }
  return excess / caps.c2;
}

StabilityReport stability_from_derivatives(const AffineCoefficients& derivs_at_zero, double w0, const Gains& gains,
                                           double t_eval, std::optional<double> dt) {
  if (!(t_eval > 0.0)) throw std::invalid_argument("t_eval must be positive");
  if (!(w0 > 0.0)) throw AssumptionError("w0 must be positive");
  StabilityReport rep;
  rep.c = derivs_at_zero.a + derivs_at_zero.b / (w0 * t_eval);
  if (!(rep.c > 0.0)) {
    throw AssumptionError(fmt::format("A'(0) + B'(0)/(w0 t) = {} is not positive; the model breaks the monotone "
                                      "affine-form assumption",
                                      rep.c));
  }
  const double trace = gains.k2 / rep.c;  // minus the trace of the queue-mode matrix
  const double det = gains.k1 / rep.c;
  rep.mode1 = -trace;
  const std::complex<double> disc = std::sqrt(std::complex<double>(trace * trace - 4.0 * det, 0.0));
  rep.mode2[0] = 0.5 * (-trace + disc);
  rep.mode2[1] = 0.5 * (-trace - disc);

  rep.stable = rep.mode1 < 0.0 && rep.mode2[0].real() < 0.0 && rep.mode2[1].real() < 0.0;
  rep.max_abs_eigenvalue = std::max({std::abs(rep.mode1), std::abs(rep.mode2[0]), std::abs(rep.mode2[1])});
  rep.stiff = dt.has_value() && rep.max_abs_eigenvalue > 2.0 / *dt;
  return rep;
}

StabilityReport linearized_stability(const LaneChoiceModel& model, const DemandSample& demand,
                                     const Capacities& caps, const Gains& gains, double t_eval,
                                     std::optional<double> dt) {
  const double w0 = equilibrium_profile(demand, caps);
  return stability_from_derivatives(affine_derivatives_at_zero(model, demand, caps), w0, gains, t_eval, dt);
}

double default_stability_time(const SimTrace& trace) {
  if (auto t = detect_convergence(trace, 0.05, 0.05); t && *t > 0.0) return *t;
  return 0.5 * trace.config.horizon;
}

double price_slope(const SimTrace& trace, double t_from) {
  double n = 0.0, st = 0.0, su = 0.0;
  for (const auto& r : trace.records) {
    if (r.t < t_from) continue;
    n += 1.0;
    st += r.t;
    su += r.u_applied;
  }
  if (n < 2.0) throw std::invalid_argument("price slope needs at least two records in the window");
  const double tm = st / n;
  const double um = su / n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& r : trace.records) {
    if (r.t < t_from) continue;
    sxy += (r.t - tm) * (r.u_applied - um);
    sxx += (r.t - tm) * (r.t - tm);
  }
  return sxy / sxx;
}

}  // namespace hotlane
