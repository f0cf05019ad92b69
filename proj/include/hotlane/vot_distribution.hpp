#pragma once

#include <memory>

#include "hotlane/domain.hpp"

namespace hotlane {

/// Distribution of SOV values of time on [0, inf), in $/min.
class VotDistribution {
 public:
  virtual ~VotDistribution() = default;

  virtual double cdf(double x) const = 0;
  virtual double pdf(double x) const = 0;
  /// Inverse of cdf on (0, 1).
  virtual double quantile(double y) const = 0;
  /// E[pi | pi <= x]. Returns mean() for x = +inf and 0 for x <= 0.
  virtual double conditional_mean_below(double x) const = 0;
  virtual double mean() const = 0;

  /// 1 - cdf(x); overridden where a direct form avoids cancellation.
  virtual double survival(double x) const { return 1.0 - cdf(x); }
  /// x such that survival(x) = s, i.e. quantile(1 - s).
  virtual double upper_quantile(double s) const { return quantile(1.0 - s); }
};

/// F(x) = 1 - exp(-rate*x).
class ExponentialVot final : public VotDistribution {
 public:
  explicit ExponentialVot(double rate);

  double cdf(double x) const override;
  double pdf(double x) const override;
  double quantile(double y) const override;
  double conditional_mean_below(double x) const override;
  double mean() const override { return 1.0 / rate_; }
  double survival(double x) const override;
  double upper_quantile(double s) const override;

  double rate() const { return rate_; }

 private:
  double rate_;
};

/// The simplified Burr variant F(x) = r^g / (1 + r^g), r = x/pi_star
/// (a log-logistic law with median pi_star).
class BurrVariantVot final : public VotDistribution {
 public:
  BurrVariantVot(double pi_star, double gamma);

  double cdf(double x) const override;
  double pdf(double x) const override;
  double quantile(double y) const override;
  double conditional_mean_below(double x) const override;
  /// Infinite when gamma <= 1.
  double mean() const override;
  double survival(double x) const override;
  double upper_quantile(double s) const override;

  double pi_star() const { return pi_star_; }
  double gamma() const { return gamma_; }

 private:
  double pi_star_;
  double gamma_;
};

std::shared_ptr<const VotDistribution> make_vot_distribution(const VotDistributionSpec& spec);

}  // namespace hotlane
