#include "hotlane/estimation.hpp"

#include <algorithm>
#include <cmath>

namespace hotlane {

std::optional<double> estimate_logit_vot(double u, double w, double q2, double q3, double alpha) {
  if (!(w > 0.0) || !(q3 > 0.0) || !(q3 < q2)) return std::nullopt;
  return (u - std::log((q2 - q3) / q3) / alpha) / w;
}

std::optional<EmpiricalCdfPoint> accumulate_cdf_point(double u, double w, double q2, double q3) {
  if (!(w > 0.0) || !(q2 > 0.0) || q3 < 0.0 || q3 > q2) return std::nullopt;
  if (u == 0.0) return EmpiricalCdfPoint{0.0, 1.0 - q3 / q2};
  if (q3 == 0.0 || q3 == q2) return std::nullopt;
  return EmpiricalCdfPoint{u / w, 1.0 - q3 / q2};
}

EmpiricalCdf empirical_cdf(std::vector<EmpiricalCdfPoint> points) {
  std::sort(points.begin(), points.end(), [](const auto& l, const auto& r) { return l.x < r.x; });

  struct Block {
    double x;
    double sum;
    double weight;
  };
  std::vector<Block> merged;
  for (const auto& pt : points) {
    if (!merged.empty() && pt.x - merged.back().x <= kCdfMergeTolerance) {
      merged.back().sum += pt.f_hat;
      merged.back().weight += 1.0;
    } else {
      merged.push_back({pt.x, pt.f_hat, 1.0});
    }
  }

  // Pool adjacent violators on the merged means.
  struct Pool {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Pool> pools;
  bool pooled = false;
  for (const auto& m : merged) {
    pools.push_back({m.sum / m.weight, m.weight, 1});
    while (pools.size() > 1 && pools[pools.size() - 2].mean > pools.back().mean + kCdfMergeTolerance) {
      auto top = pools.back();
      pools.pop_back();
      auto& prev = pools.back();
      const double w = prev.weight + top.weight;
      prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / w;
      prev.weight = w;
      prev.count += top.count;
      pooled = true;
    }
  }

  EmpiricalCdf out;
  out.pooled = pooled;
  out.points.reserve(merged.size());
  std::size_t k = 0;
  for (const auto& pool : pools) {
    for (std::size_t j = 0; j < pool.count; ++j, ++k) {
      out.points.push_back({merged[k].x, pool.mean});
    }
  }
  return out;
}

EmpiricalPdf empirical_pdf(std::vector<EmpiricalCdfPoint> points) {
  auto cdf = empirical_cdf(std::move(points));
  const auto& pts = cdf.points;
  if (pts.size() < 2) throw InsufficientDataError("empirical pdf needs at least two distinct x values");

  EmpiricalPdf out;
  out.pooled = cdf.pooled;
  if (pts.size() == 2) {
    const double s = (pts[1].f_hat - pts[0].f_hat) / (pts[1].x - pts[0].x);
    out.density.push_back({0.5 * (pts[0].x + pts[1].x), std::max(0.0, s)});
    return out;
  }
  out.density.reserve(pts.size() - 2);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double s = (pts[i + 1].f_hat - pts[i - 1].f_hat) / (pts[i + 1].x - pts[i - 1].x);
    out.density.push_back({pts[i].x, std::max(0.0, s)});
  }
  return out;
}

std::vector<VotPointEstimate> harvest_logit_estimates(const std::vector<StepRecord>& records, double alpha) {
  std::vector<VotPointEstimate> out;
  for (const auto& r : records) {
    if (auto pi = estimate_logit_vot(r.u_applied, r.w, r.q2, r.q3, alpha)) out.push_back({r.t, *pi});
  }
  return out;
}

std::vector<EmpiricalCdfPoint> harvest_cdf_points(const std::vector<StepRecord>& records) {
  std::vector<EmpiricalCdfPoint> out;
  for (const auto& r : records) {
    if (auto pt = accumulate_cdf_point(r.u_applied, r.w, r.q2, r.q3)) out.push_back(*pt);
  }
  return out;
}

}  // namespace hotlane
