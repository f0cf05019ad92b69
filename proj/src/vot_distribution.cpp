#include "hotlane/vot_distribution.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hotlane {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_probability(double y) {
  if (!(y > 0.0 && y < 1.0)) throw std::domain_error("quantile argument must lie in (0, 1)");
}
}  // namespace

ExponentialVot::ExponentialVot(double rate) : rate_(rate) {
  if (!(rate > 0.0 && std::isfinite(rate))) throw std::invalid_argument("exponential VOT rate must be positive");
}

double ExponentialVot::cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x); }

double ExponentialVot::survival(double x) const { return x <= 0.0 ? 1.0 : std::exp(-rate_ * x); }

double ExponentialVot::pdf(double x) const { return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x); }

double ExponentialVot::quantile(double y) const {
  require_probability(y);
  return -std::log1p(-y) / rate_;
}

double ExponentialVot::upper_quantile(double s) const {
  require_probability(s);
  return -std::log(s) / rate_;
}

double ExponentialVot::conditional_mean_below(double x) const {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return mean();
  const double z = rate_ * x;
  if (z < 1e-6) return 0.5 * x * (1.0 - z / 6.0);
  // 1/rate - x e^{-z} / (1 - e^{-z})
  return 1.0 / rate_ - x / std::expm1(z);
}

BurrVariantVot::BurrVariantVot(double pi_star, double gamma) : pi_star_(pi_star), gamma_(gamma) {
  if (!(pi_star > 0.0 && std::isfinite(pi_star))) throw std::invalid_argument("Burr VOT pi_star must be positive");
  if (!(gamma > 0.0 && std::isfinite(gamma))) throw std::invalid_argument("Burr VOT gamma must be positive");
}

double BurrVariantVot::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double rg = std::pow(x / pi_star_, gamma_);
  return rg / (1.0 + rg);
}

double BurrVariantVot::survival(double x) const {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return 1.0 / (1.0 + std::pow(x / pi_star_, gamma_));
}

double BurrVariantVot::pdf(double x) const {
  if (x <= 0.0) return 0.0;
  const double r = x / pi_star_;
  const double rg = std::pow(r, gamma_);
  return gamma_ / pi_star_ * std::pow(r, gamma_ - 1.0) / ((1.0 + rg) * (1.0 + rg));
}

double BurrVariantVot::quantile(double y) const {
  require_probability(y);
  return pi_star_ * std::pow(y / (1.0 - y), 1.0 / gamma_);
}

double BurrVariantVot::upper_quantile(double s) const {
  require_probability(s);
  return pi_star_ * std::pow((1.0 - s) / s, 1.0 / gamma_);
}

double BurrVariantVot::mean() const {
  if (gamma_ <= 1.0) return kInf;
  const double k = std::numbers::pi / gamma_;
  return pi_star_ * k / std::sin(k);
}

double BurrVariantVot::conditional_mean_below(double x) const {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return mean();
  // E[pi 1{pi <= x}] = x F(x) - int_0^x F(s) ds
  auto cdf_fn = [this](double s) { return cdf(s); };
  const double area = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(cdf_fn, 0.0, x, 15, 1e-13);
  const double fx = cdf(x);
  return (x * fx - area) / fx;
}

std::shared_ptr<const VotDistribution> make_vot_distribution(const VotDistributionSpec& spec) {
  if (const auto* e = std::get_if<ExponentialVotSpec>(&spec)) return std::make_shared<ExponentialVot>(e->rate);
  const auto& b = std::get<BurrVotSpec>(spec);
  return std::make_shared<BurrVariantVot>(b.pi_star, b.gamma);
}

}  // namespace hotlane
