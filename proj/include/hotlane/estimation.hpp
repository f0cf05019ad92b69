#pragma once

// Observational recovery of lane-choice parameters from (u, w, q2, q3).
// Nothing here feeds back into pricing.

#include <optional>
#include <stdexcept>
#include <vector>

#include "hotlane/domain.hpp"

namespace hotlane {

struct VotPointEstimate {
  double t = 0.0;
  double pi_hat = 0.0;
};

struct EmpiricalCdfPoint {
  double x = 0.0;      // u/w, $/min
  double f_hat = 0.0;  // 1 - q3/q2
};

struct DensityPoint {
  double x = 0.0;
  double f_hat = 0.0;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Logit VOT by algebraic inversion:
///   pi_hat = (u - ln((q2 - q3)/q3)/alpha) / w.
/// Empty when w <= 0 or q3 is not strictly inside (0, q2).
std::optional<double> estimate_logit_vot(double u, double w, double q2, double q3, double alpha = 1.0);

/// One point of the UE empirical CDF, (u/w, 1 - q3/q2). Empty on uninformative
/// samples. A free HOT lane (u = 0) that every SOV takes yields (0, 0).
std::optional<EmpiricalCdfPoint> accumulate_cdf_point(double u, double w, double q2, double q3);

struct EmpiricalCdf {
  std::vector<EmpiricalCdfPoint> points;  // sorted by x, distinct x, nondecreasing f_hat
  bool pooled = false;                    // isotonic pooling changed at least one value
};

inline constexpr double kCdfMergeTolerance = 1e-9;

/// Sorts by x, merges points whose x lies within 1e-9 of a group's first x
/// (averaging f_hat), then applies pool-adjacent-violators so the result is
/// nondecreasing.
EmpiricalCdf empirical_cdf(std::vector<EmpiricalCdfPoint> points);

struct EmpiricalPdf {
  std::vector<DensityPoint> density;
  bool pooled = false;
};

/// Density by centred differences of the cleaned empirical CDF at interior
/// points; with exactly two distinct x, one slope at their midpoint. Slopes
/// are clipped at zero. Throws InsufficientDataError with < 2 distinct x.
EmpiricalPdf empirical_pdf(std::vector<EmpiricalCdfPoint> points);

/// pi_hat at every record where the estimator is defined.
std::vector<VotPointEstimate> harvest_logit_estimates(const std::vector<StepRecord>& records, double alpha);

/// CDF points from every informative record, in time order.
std::vector<EmpiricalCdfPoint> harvest_cdf_points(const std::vector<StepRecord>& records);

}  // namespace hotlane
