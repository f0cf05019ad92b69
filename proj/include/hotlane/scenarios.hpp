#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hotlane/domain.hpp"

namespace hotlane::scenarios {

/// Logit lane choice (pi* = 0.5 $/min, alpha* = 1), constant demand 10/60 veh/min,
/// c1 = c2 = 30, dt = 0.1 s, 20 min.
ScenarioConfig logit_constant();
/// As logit_constant with Poisson demand (means 10/60, 1-min blocks).
ScenarioConfig logit_poisson(std::uint64_t seed = 1);
/// Vehicle-based UE with exponential VOTs, F(x) = 1 - exp(-2x).
ScenarioConfig ue_constant();
ScenarioConfig ue_poisson(std::uint64_t seed = 1);
/// logit_constant stepped at dt = 1 s for 250 min.
ScenarioConfig logit_coarse_dt();

/// Names accepted by by_name(), in a stable order.
const std::vector<std::string>& names();

/// Throws std::out_of_range for an unknown name.
ScenarioConfig by_name(std::string_view name);

}  // namespace hotlane::scenarios
