#pragma once

// Closed-loop discrete-time driver. Each step, in order:
//   1. sample demands          2. w from the queues
//   3. price from controller   4. (q3, zeta) from the lane-choice model
//   5. record                  6. queue update     7. controller update

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hotlane/domain.hpp"
#include "hotlane/lane_choice.hpp"

namespace hotlane {

using Rng = std::mt19937_64;

/// Raised when a scenario fails validation; carries every hard error.
class ScenarioError : public std::invalid_argument {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Raised when a state variable stops being finite.
class NumericAbortError : public std::runtime_error {
 public:
  NumericAbortError(std::int64_t step, const std::string& what);
  std::int64_t step() const { return step_; }

 private:
  std::int64_t step_;
};

/// Poisson demand counts are drawn at t = 0, R, 2R, ... and the rates
/// N/R held until the next boundary. Constant demand never touches the RNG.
class DemandGenerator {
 public:
  DemandGenerator(DemandSpec spec, std::uint64_t seed);

  /// Demand at time t; successive calls must not go back in time.
  DemandSample sample(double t);

 private:
  DemandSpec spec_;
  Rng rng_;
  DemandSample held_;
  double next_boundary_ = 0.0;
  std::int64_t blocks_drawn_ = 0;
};

/// One stateless draw of block-averaged Poisson rates.
DemandSample draw_poisson_rates(const PoissonDemand& spec, Rng& rng);

struct SimTrace {
  ScenarioConfig config;
  std::uint64_t seed = 0;
  std::vector<StepRecord> records;
};

/// Runs the closed loop. Throws ScenarioError or NumericAbortError.
/// Identical configs give bit-identical traces.
SimTrace run(const ScenarioConfig& cfg);

/// Same loop with an explicitly supplied plant model.
SimTrace run(const ScenarioConfig& cfg, const LaneChoiceModel& model);

/// Open-loop probe: the controller is bypassed and either the paying flow q3
/// or the residual capacity zeta is held at `level` every step. The recorded
/// price is the one the model needs for that split; where none exists (a share
/// of 0 or 1) the price is recorded as 0 and the step flagged degenerate.
struct OpenLoopProbe {
  enum class Hold { kPayingFlow, kResidual };
  Hold hold = Hold::kPayingFlow;
  double level = 0.0;
};

SimTrace run_open_loop(const ScenarioConfig& cfg, const OpenLoopProbe& probe);

/// Earliest t* such that every record from t* on has lambda1 <= eps_lambda
/// and |zeta| <= eps_zeta.
std::optional<double> detect_convergence(const SimTrace& trace, double eps_lambda, double eps_zeta);

}  // namespace hotlane
