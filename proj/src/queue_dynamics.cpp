#include "hotlane/queue_dynamics.hpp"

#include <algorithm>

namespace hotlane {

LaneState queue_step(const LaneState& state, const DemandSample& demand, double zeta,
                     const Capacities& caps, double dt) {
  const double gp_net = demand.q1 + demand.q2 - caps.c1 - caps.c2 + zeta;
  return {std::max(0.0, state.lambda1 - zeta * dt), std::max(0.0, state.lambda2 + gp_net * dt)};
}

double queueing_time_diff(const LaneState& state, const Capacities& caps) {
  return state.lambda2 / caps.c2 - state.lambda1 / caps.c1;
}

}  // namespace hotlane
