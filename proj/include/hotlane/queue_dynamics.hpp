#pragma once

#include "hotlane/domain.hpp"

namespace hotlane {

/// Advances both point queues by one step. The relaxation constant of the
/// continuous model is taken equal to dt, which reduces the update to
///   lambda1' = max(0, lambda1 - zeta*dt)
///   lambda2' = max(0, lambda2 + (q1 + q2 - c1 - c2 + zeta)*dt)
LaneState queue_step(const LaneState& state, const DemandSample& demand, double zeta,
                     const Capacities& caps, double dt);

/// GP queueing time minus HOT queueing time (min). May be negative.
double queueing_time_diff(const LaneState& state, const Capacities& caps);

}  // namespace hotlane
