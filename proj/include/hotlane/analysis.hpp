#pragma once

// Post-hoc and analytic checks on the closed loop: cost functionals, the
// fixed-share cost sweep, the equilibrium growth rate and the linearised
// stability of the switching system near the ideal state.

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hotlane/domain.hpp"
#include "hotlane/lane_choice.hpp"
#include "hotlane/sim_engine.hpp"

namespace hotlane {

/// A model or demand pattern breaks an assumption the analysis relies on.
class AssumptionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct CostBreakdown {
  double phi2 = 0.0;  // queueing cost of SOVs staying on the GP lane ($)
  double phi3 = 0.0;  // tolls paid ($)
  double phi = 0.0;
};

/// Riemann sums over the trace with step dt:
///   phi3 = sum q3 * u_applied * dt
///   phi2 = sum (q2 - q3) * (lambda2/c2) * vot * dt
/// where vot is the model's mean VOT of the SOVs that stay on the GP lane.
CostBreakdown total_cost(const SimTrace& trace, const LaneChoiceModel& model);

struct SweepPoint {
  double q3 = 0.0;
  CostBreakdown cost;
};

struct Theorem1Result {
  std::vector<SweepPoint> points;
  double argmin_q3 = 0.0;
  /// argmin is the largest feasible level on the grid.
  bool argmin_at_capacity = false;
};

/// Holds q3 at each grid level in open loop (controller bypassed), runs the
/// queues over the base horizon and prices each run with total_cost.
/// Requires constant demand; levels above c1 - q1 or below 0 are rejected.
Theorem1Result theorem1_sweep(const ScenarioConfig& base, std::span<const double> grid);

/// Equilibrium growth rate of w: (q1 + q2 - c1 - c2)/c2. Throws
/// AssumptionError when demand does not exceed total capacity.
double equilibrium_profile(const DemandSample& demand, const Capacities& caps);

struct StabilityReport {
  double c = 0.0;  // A'(0) + B'(0)/(w0*t_eval)
  double mode1 = 0.0;  // queue-free mode: -k2/c
  std::complex<double> mode2[2];  // queue mode: roots of s^2 + (k2/c)s + k1/c
  bool stable = false;
  double max_abs_eigenvalue = 0.0;
  /// Some |s| exceeds 2/dt; explicit stepping at that dt can diverge.
  bool stiff = false;
};

/// Eigen-analysis of the approximate switching system from given derivatives.
/// Throws AssumptionError when c <= 0.
StabilityReport stability_from_derivatives(const AffineCoefficients& derivs_at_zero, double w0, const Gains& gains,
                                           double t_eval, std::optional<double> dt = std::nullopt);

StabilityReport linearized_stability(const LaneChoiceModel& model, const DemandSample& demand,
                                     const Capacities& caps, const Gains& gains, double t_eval,
                                     std::optional<double> dt = std::nullopt);

/// Convergence time at eps = (0.05, 0.05) if the trace converges, else horizon/2.
double default_stability_time(const SimTrace& trace);

/// Least-squares slope of u_applied against t over records with t >= t_from.
double price_slope(const SimTrace& trace, double t_from);

}  // namespace hotlane
