#include "hotlane/pricing_controller.hpp"

namespace hotlane {

Price compute_price(const ControllerState& ctrl, double w, bool floor) {
  Price p;
  p.raw = ctrl.a * w + ctrl.b;
  p.clamped = floor && p.raw < 0.0;
  p.applied = p.clamped ? 0.0 : p.raw;
  return p;
}

ControllerState controller_step(const ControllerState& ctrl, double lambda1, double zeta,
                                const Gains& gains, double dt) {
  return {ctrl.a + (gains.k1 * lambda1 - gains.k2 * zeta) * dt,
          ctrl.b + (gains.k3 * lambda1 - gains.k4 * zeta) * dt};
}

}  // namespace hotlane
