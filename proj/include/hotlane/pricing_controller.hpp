#pragma once

// Model-free HOT lane pricing: u = a*w + b, with a and b driven by two
// integral controllers on the HOT queue length lambda1 and the HOT residual
// capacity zeta. Nothing here knows about the lane-choice or traffic model;
// this header deliberately depends on the domain types only.

#include "hotlane/domain.hpp"

namespace hotlane {

struct Price {
  double raw = 0.0;
  double applied = 0.0;
  bool clamped = false;
};

/// u_raw = a*w + b; u_applied = max(0, u_raw) when the floor is enabled.
Price compute_price(const ControllerState& ctrl, double w, bool floor);

/// One explicit step of the integrators:
///   a' = a + (k1*lambda1 - k2*zeta)*dt
///   b' = b + (k3*lambda1 - k4*zeta)*dt
/// The integrators see the true (lambda1, zeta) even when the emitted price
/// was floored; there is no anti-windup.
ControllerState controller_step(const ControllerState& ctrl, double lambda1, double zeta,
                                const Gains& gains, double dt);

}  // namespace hotlane
