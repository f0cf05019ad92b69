#pragma once

// Core value types shared by every hotlane module.
//
// Units are fixed across the library: time in minutes, flows in veh/min,
// queue lengths in vehicles, prices in dollars.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace hotlane {

/// Bottleneck discharge capacities (veh/min).
struct Capacities {
  double c1 = 0.0;  // HOT lane
  double c2 = 0.0;  // GP lane
};

/// Arrival rates at one instant (veh/min).
struct DemandSample {
  double q1 = 0.0;  // HOV
  double q2 = 0.0;  // SOV
};

/// Point-queue lengths (veh).
struct LaneState {
  double lambda1 = 0.0;  // HOT
  double lambda2 = 0.0;  // GP
};

/// Integrator states of the affine price law u = a*w + b.
struct ControllerState {
  double a = 0.0;  // $/min
  double b = 0.0;  // $
};

/// Integral gains. Units: k1 $/veh/min^2, k2 $/veh/min, k3 $/veh/min, k4 $/veh.
struct Gains {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
};

// ---------------------------------------------------------------------------
// Demand specification

struct ConstantDemand {
  double q1 = 0.0;
  double q2 = 0.0;
};

/// Per-block Poisson counts; rates are held for `resample_every` minutes.
struct PoissonDemand {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double resample_every = 1.0;
};

using DemandSpec = std::variant<ConstantDemand, PoissonDemand>;

// ---------------------------------------------------------------------------
// Lane-choice model specification (the behavioural model of the plant)

struct ExponentialVotSpec {
  double rate = 0.0;  // 1/($/min)
};

struct BurrVotSpec {
  double pi_star = 0.0;  // median VOT, $/min
  double gamma = 0.0;    // shape
};

using VotDistributionSpec = std::variant<ExponentialVotSpec, BurrVotSpec>;

struct LogitSpec {
  double pi_star = 0.0;     // $/min
  double alpha_star = 0.0;  // 1/$
};

struct UeSpec {
  VotDistributionSpec distribution;
};

/// u = A(zeta)*w + B(zeta) with A, B tabulated on a common zeta grid and
/// linearly interpolated (and extrapolated from the end segments).
struct AffineSpec {
  std::vector<double> zeta;
  std::vector<double> a;
  std::vector<double> b;
};

using ChoiceModelSpec = std::variant<LogitSpec, UeSpec, AffineSpec>;

struct EstimationSpec {
  bool enabled = true;
  double alpha = 1.0;  // scale parameter assumed by the logit VOT estimator
};

struct ScenarioConfig {
  std::string name;
  Capacities capacities;
  Gains gains;
  LaneState initial_lanes;
  ControllerState initial_controller;
  double dt = 0.0;       // min
  double horizon = 0.0;  // min
  DemandSpec demand = ConstantDemand{};
  ChoiceModelSpec choice_model = LogitSpec{};
  std::uint64_t rng_seed = 0;
  bool price_floor_enabled = true;
  EstimationSpec estimation;
};

/// Everything observable at one time step.
struct StepRecord {
  double t = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double w = 0.0;
  double u_raw = 0.0;
  double u_applied = 0.0;
  double p = 0.0;
  double zeta = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double a = 0.0;
  double b = 0.0;
  bool clamped = false;     // price floor engaged
  bool degenerate = false;  // choice evaluated outside the model's regular regime
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

/// Checks type invariants (hard errors) and the standing congestion
/// assumptions (warnings) of a scenario.
ValidationReport validate_scenario(const ScenarioConfig& cfg);

/// Monotonicity and shape checks for user-supplied A/B tables. Empty when valid.
std::vector<std::string> check_affine_tables(const AffineSpec& spec);

/// round(horizon/dt). Call only on validated configs.
std::int64_t step_count(const ScenarioConfig& cfg);

/// Mean demand implied by the spec (the constant value, or the Poisson means).
DemandSample nominal_demand(const DemandSpec& spec);

}  // namespace hotlane
