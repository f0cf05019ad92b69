#include "hotlane/lane_choice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

namespace hotlane {

namespace {

void require_interior(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw OutOfRangeError(fmt::format("implied share {} is outside (0, 1); the required price is unbounded", p));
  }
}

// 1/(1+e^z) without overflow.
double logistic_complement(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

}  // namespace

// ---------------------------------------------------------------------------
// Logit

LogitModel::LogitModel(double pi_star, double alpha_star) : pi_star_(pi_star), alpha_star_(alpha_star) {
  if (!(pi_star > 0.0 && std::isfinite(pi_star))) throw std::invalid_argument("logit pi_star must be positive");
  if (!(alpha_star > 0.0 && std::isfinite(alpha_star))) throw std::invalid_argument("logit alpha_star must be positive");
}

ChoiceResult LogitModel::fraction(double u, double w, const FlowContext&) const {
  return {logistic_complement(alpha_star_ * (u - pi_star_ * w)), false};
}

double LogitModel::price_for_fraction(double p, double w, const FlowContext&) const {
  require_interior(p);
  return pi_star_ * w + std::log((1.0 - p) / p) / alpha_star_;
}

AffineCoefficients LogitModel::affine_at(double zeta, const FlowContext& ctx) const {
  const double p = implied_fraction(zeta, ctx.demand, ctx.caps);
  require_interior(p);
  const auto& d = ctx.demand;
  const auto& c = ctx.caps;
  return {pi_star_, std::log((d.q1 + d.q2 - c.c1 + zeta) / (c.c1 - d.q1 - zeta)) / alpha_star_};
}

std::optional<AffineCoefficients> LogitModel::affine_slope_at_zero(const FlowContext& ctx) const {
  const auto& d = ctx.demand;
  const auto& c = ctx.caps;
  return AffineCoefficients{0.0, (1.0 / (d.q1 + d.q2 - c.c1) + 1.0 / (c.c1 - d.q1)) / alpha_star_};
}

std::optional<double> LogitModel::staying_vot(double, double) const { return pi_star_; }

// ---------------------------------------------------------------------------
// Vehicle-based UE

UeModel::UeModel(std::shared_ptr<const VotDistribution> dist) : dist_(std::move(dist)) {
  if (!dist_) throw std::invalid_argument("UE model needs a VOT distribution");
}

ChoiceResult UeModel::fraction(double u, double w, const FlowContext&) const {
  if (w <= 0.0) return {0.0, true};
  return {dist_->survival(u / w), false};
}

double UeModel::price_for_fraction(double p, double w, const FlowContext&) const {
  require_interior(p);
  if (!(w > 0.0)) throw OutOfRangeError("UE inverse price needs w > 0");
  return w * dist_->upper_quantile(p);
}

AffineCoefficients UeModel::affine_at(double zeta, const FlowContext& ctx) const {
  const double p = implied_fraction(zeta, ctx.demand, ctx.caps);
  require_interior(p);
  return {dist_->upper_quantile(p), 0.0};
}

std::optional<AffineCoefficients> UeModel::affine_slope_at_zero(const FlowContext& ctx) const {
  const double p = implied_fraction(0.0, ctx.demand, ctx.caps);
  require_interior(p);
  // d/dzeta of upper_quantile(p(zeta)) with dp/dzeta = -1/q2.
  const double x = dist_->upper_quantile(p);
  return AffineCoefficients{1.0 / (ctx.demand.q2 * dist_->pdf(x)), 0.0};
}

std::optional<double> UeModel::staying_vot(double u, double w) const {
  if (w <= 0.0) return dist_->mean();
  return dist_->conditional_mean_below(u / w);
}

// ---------------------------------------------------------------------------
// General affine

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size()) throw std::invalid_argument("piecewise-linear table needs >= 2 points");
}

std::size_t PiecewiseLinear::segment(double x) const {
  const auto it = std::upper_bound(xs_.begin() + 1, xs_.end() - 1, x);
  return static_cast<std::size_t>(it - xs_.begin()) - 1;
}

double PiecewiseLinear::operator()(double x) const {
  const auto i = segment(x);
  const double s = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + s * (x - xs_[i]);
}

GeneralAffineModel::GeneralAffineModel(const AffineSpec& spec) : a_(spec.zeta, spec.a), b_(spec.zeta, spec.b) {
  const auto errs = check_affine_tables(spec);
  if (!errs.empty()) throw std::invalid_argument(errs.front());
}

ChoiceResult GeneralAffineModel::fraction(double u, double w, const FlowContext& ctx) const {
  const bool degenerate = w < 0.0;
  const double we = std::max(w, 0.0);
  const auto& d = ctx.demand;
  const auto& c = ctx.caps;
  if (!(d.q2 > 0.0)) return {0.0, true};

  // Price is nondecreasing in zeta; find the zeta whose price is u.
  auto price = [&](double z) { return a_(z) * we + b_(z); };
  double lo = c.c1 - d.q1 - d.q2;  // p = 1
  double hi = c.c1 - d.q1;         // p = 0
  if (u <= price(lo)) return {1.0, degenerate};
  if (u >= price(hi)) return {0.0, degenerate};
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (price(mid) < u ? lo : hi) = mid;
  }
  const double zeta = 0.5 * (lo + hi);
  return {std::clamp((c.c1 - d.q1 - zeta) / d.q2, 0.0, 1.0), degenerate};
}

double GeneralAffineModel::price_for_fraction(double p, double w, const FlowContext& ctx) const {
  require_interior(p);
  const double zeta = ctx.caps.c1 - ctx.demand.q1 - p * ctx.demand.q2;
  return a_(zeta) * std::max(w, 0.0) + b_(zeta);
}

AffineCoefficients GeneralAffineModel::affine_at(double zeta, const FlowContext&) const {
  return {a_(zeta), b_(zeta)};
}

std::optional<AffineCoefficients> GeneralAffineModel::affine_slope_at_zero(const FlowContext&) const {
  return std::nullopt;
}

std::optional<double> GeneralAffineModel::staying_vot(double, double) const { return std::nullopt; }

std::shared_ptr<const LaneChoiceModel> make_choice_model(const ChoiceModelSpec& spec) {
  if (const auto* l = std::get_if<LogitSpec>(&spec)) return std::make_shared<LogitModel>(l->pi_star, l->alpha_star);
  if (const auto* ue = std::get_if<UeSpec>(&spec)) return std::make_shared<UeModel>(make_vot_distribution(ue->distribution));
  return std::make_shared<GeneralAffineModel>(std::get<AffineSpec>(spec));
}

// ---------------------------------------------------------------------------
// Operations

double choice_fraction(const LaneChoiceModel& model, double u, double w, const FlowContext& ctx) {
  return model.fraction(u, w, ctx).p;
}

FlowSplit flow_and_residual(const LaneChoiceModel& model, double u, double w, const DemandSample& demand,
                            const Capacities& caps) {
  const auto r = model.fraction(u, w, {demand, caps});
  FlowSplit s;
  s.p = r.p;
  s.q3 = r.p * demand.q2;
  s.zeta = caps.c1 - demand.q1 - s.q3;
  s.degenerate = r.degenerate;
  return s;
}

double implied_fraction(double zeta, const DemandSample& demand, const Capacities& caps) {
  return (caps.c1 - demand.q1 - zeta) / demand.q2;
}

double inverse_price(const LaneChoiceModel& model, double zeta_target, double w, const DemandSample& demand,
                     const Capacities& caps) {
  const double p = implied_fraction(zeta_target, demand, caps);
  require_interior(p);
  return model.price_for_fraction(p, w, {demand, caps});
}

AffineCoefficients affine_decomposition(const LaneChoiceModel& model, double zeta, const DemandSample& demand,
                                        const Capacities& caps) {
  return model.affine_at(zeta, {demand, caps});
}

AffineCoefficients affine_derivatives_numeric(const LaneChoiceModel& model, const DemandSample& demand,
                                              const Capacities& caps, double zeta, double h) {
  const auto up = model.affine_at(zeta + h, {demand, caps});
  const auto dn = model.affine_at(zeta - h, {demand, caps});
  return {(up.a - dn.a) / (2.0 * h), (up.b - dn.b) / (2.0 * h)};
}

AffineCoefficients affine_derivatives_at_zero(const LaneChoiceModel& model, const DemandSample& demand,
                                              const Capacities& caps) {
  if (auto exact = model.affine_slope_at_zero({demand, caps})) return *exact;
  return affine_derivatives_numeric(model, demand, caps);
}

}  // namespace hotlane
