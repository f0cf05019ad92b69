#pragma once

// Lane-choice models p = G(u, w): the share of SOVs that pay to use the HOT
// lane given price u ($) and queueing-time difference w (min).
//
// Each model also exposes the inverse relation (the price that produces a
// given share) and its affine form u = A(zeta)*w + B(zeta), where zeta is the
// HOT residual capacity c1 - q1 - p*q2.

#include <memory>
#include <optional>
#include <stdexcept>

#include "hotlane/domain.hpp"
#include "hotlane/vot_distribution.hpp"

namespace hotlane {

/// Thrown when a target share sits on or outside (0, 1), where the required
/// price is unbounded.
class OutOfRangeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Demand and capacity context. Logit and UE models ignore it; the general
/// affine model is parameterised in zeta and needs it to map zeta <-> p.
struct FlowContext {
  DemandSample demand;
  Capacities caps;
};

struct ChoiceResult {
  double p = 0.0;
  bool degenerate = false;  // evaluated outside the regime the model is defined on
};

struct AffineCoefficients {
  double a = 0.0;  // A ($/min), or A' ($/veh) for derivatives
  double b = 0.0;  // B ($),     or B' ($*min/veh)
};

class LaneChoiceModel {
 public:
  virtual ~LaneChoiceModel() = default;

  virtual ChoiceResult fraction(double u, double w, const FlowContext& ctx) const = 0;
  /// Price producing share p in (0, 1) at queueing-time difference w.
  virtual double price_for_fraction(double p, double w, const FlowContext& ctx) const = 0;
  virtual AffineCoefficients affine_at(double zeta, const FlowContext& ctx) const = 0;
  /// (A'(0), B'(0)) in closed form, when the model has one.
  virtual std::optional<AffineCoefficients> affine_slope_at_zero(const FlowContext& ctx) const = 0;
  /// Mean VOT of the SOVs that stay on the GP lane at (u, w); empty when the
  /// model carries no VOT notion.
  virtual std::optional<double> staying_vot(double u, double w) const = 0;
};

/// Homogeneous VOT pi_star with scale alpha_star:
///   p = 1 / (1 + exp(alpha_star * (u - pi_star * w))).
/// Well defined for every real w.
class LogitModel final : public LaneChoiceModel {
 public:
  LogitModel(double pi_star, double alpha_star);

  ChoiceResult fraction(double u, double w, const FlowContext& ctx) const override;
  double price_for_fraction(double p, double w, const FlowContext& ctx) const override;
  AffineCoefficients affine_at(double zeta, const FlowContext& ctx) const override;
  std::optional<AffineCoefficients> affine_slope_at_zero(const FlowContext& ctx) const override;
  std::optional<double> staying_vot(double u, double w) const override;

  double pi_star() const { return pi_star_; }
  double alpha_star() const { return alpha_star_; }

 private:
  double pi_star_;
  double alpha_star_;
};

/// Vehicle-based user equilibrium with heterogeneous VOTs: an SOV pays iff
/// its VOT is at least u/w, so p = 1 - F(u/w) for w > 0. For w <= 0 paying
/// never helps and p = 0 (flagged degenerate).
class UeModel final : public LaneChoiceModel {
 public:
  explicit UeModel(std::shared_ptr<const VotDistribution> dist);

  ChoiceResult fraction(double u, double w, const FlowContext& ctx) const override;
  double price_for_fraction(double p, double w, const FlowContext& ctx) const override;
  AffineCoefficients affine_at(double zeta, const FlowContext& ctx) const override;
  std::optional<AffineCoefficients> affine_slope_at_zero(const FlowContext& ctx) const override;
  std::optional<double> staying_vot(double u, double w) const override;

  const VotDistribution& distribution() const { return *dist_; }

 private:
  std::shared_ptr<const VotDistribution> dist_;
};

/// Monotone piecewise-linear table, extrapolated linearly past its ends.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;

 private:
  std::size_t segment(double x) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// u = A(zeta)*w + B(zeta) from user tables. Negative w is evaluated as w = 0
/// and flagged degenerate.
class GeneralAffineModel final : public LaneChoiceModel {
 public:
  explicit GeneralAffineModel(const AffineSpec& spec);

  ChoiceResult fraction(double u, double w, const FlowContext& ctx) const override;
  double price_for_fraction(double p, double w, const FlowContext& ctx) const override;
  AffineCoefficients affine_at(double zeta, const FlowContext& ctx) const override;
  std::optional<AffineCoefficients> affine_slope_at_zero(const FlowContext& ctx) const override;
  std::optional<double> staying_vot(double u, double w) const override;

 private:
  PiecewiseLinear a_;
  PiecewiseLinear b_;
};

std::shared_ptr<const LaneChoiceModel> make_choice_model(const ChoiceModelSpec& spec);

// ---------------------------------------------------------------------------
// Operations

struct FlowSplit {
  double p = 0.0;
  double q3 = 0.0;    // paying SOV flow
  double zeta = 0.0;  // c1 - q1 - q3
  bool degenerate = false;
};

double choice_fraction(const LaneChoiceModel& model, double u, double w, const FlowContext& ctx = {});

FlowSplit flow_and_residual(const LaneChoiceModel& model, double u, double w, const DemandSample& demand,
                            const Capacities& caps);

/// Share of SOVs that must pay for the residual capacity to equal zeta.
double implied_fraction(double zeta, const DemandSample& demand, const Capacities& caps);

/// Price that drives the residual capacity to zeta_target at w.
/// Throws OutOfRangeError unless 0 < c1 - q1 - zeta_target < q2.
double inverse_price(const LaneChoiceModel& model, double zeta_target, double w, const DemandSample& demand,
                     const Capacities& caps);

/// (A(zeta), B(zeta)). Throws OutOfRangeError on a boundary share.
AffineCoefficients affine_decomposition(const LaneChoiceModel& model, double zeta, const DemandSample& demand,
                                        const Capacities& caps);

inline constexpr double kDerivativeStep = 1e-4;  // veh/min

/// Central-difference (A'(zeta), B'(zeta)) with step h.
AffineCoefficients affine_derivatives_numeric(const LaneChoiceModel& model, const DemandSample& demand,
                                              const Capacities& caps, double zeta = 0.0,
                                              double h = kDerivativeStep);

/// (A'(0), B'(0)): closed form when the model provides one, else central differences.
AffineCoefficients affine_derivatives_at_zero(const LaneChoiceModel& model, const DemandSample& demand,
                                              const Capacities& caps);

}  // namespace hotlane
