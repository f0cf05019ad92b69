#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hotlane/analysis.hpp"
#include "hotlane/scenarios.hpp"

using namespace hotlane;

namespace {
const Capacities kCaps{30, 30};
const DemandSample kDemand{10, 60};
}  // namespace

TEST(Cost, HandSummedLogitCost) {
  auto cfg = scenarios::logit_constant();
  cfg.horizon = 0.5;
  const auto tr = run(cfg);
  double phi2 = 0, phi3 = 0;
  for (const auto& r : tr.records) {
    phi3 += r.q3 * r.u_applied * cfg.dt;
    phi2 += (r.q2 - r.q3) * r.lambda2 / 30.0 * 0.5 * cfg.dt;
  }
  const auto c = total_cost(tr, LogitModel(0.5, 1.0));
  EXPECT_NEAR(c.phi2, phi2, 1e-9);
  EXPECT_NEAR(c.phi3, phi3, 1e-9);
  EXPECT_EQ(c.phi, c.phi2 + c.phi3);
}

TEST(Cost, UeUsesMeanVotOfStayers) {
  auto cfg = scenarios::ue_constant();
  cfg.horizon = 0.5;
  const auto tr = run(cfg);
  double phi2 = 0;
  for (const auto& r : tr.records) {
    // E[pi | pi < x] for exponential rate 2.
    const double x = r.u_applied / r.w;
    const double cm = 0.5 - x * std::exp(-2 * x) / (1 - std::exp(-2 * x));
    phi2 += (r.q2 - r.q3) * r.lambda2 / 30.0 * cm * cfg.dt;
  }
  const auto dist = make_vot_distribution(ExponentialVotSpec{2.0});
  EXPECT_NEAR(total_cost(tr, UeModel(dist)).phi2, phi2, 1e-9);
}

TEST(Cost, FreeLaneMeansNoTollRevenue) {
  auto cfg = scenarios::logit_constant();
  const auto tr = run_open_loop(cfg, {OpenLoopProbe::Hold::kPayingFlow, 0.0});
  const auto c = total_cost(tr, LogitModel(0.5, 1.0));
  EXPECT_EQ(c.phi3, 0.0);
  EXPECT_EQ(c.phi, c.phi2);
}

TEST(Cost, ModelWithoutVotIsRejected) {
  auto cfg = scenarios::logit_constant();
  cfg.horizon = 0.1;
  const auto tr = run(cfg);
  const GeneralAffineModel m(AffineSpec{{-50, 50}, {0.5, 0.5}, {-1.0, 4.0}});
  EXPECT_THROW(total_cost(tr, m), AssumptionError);
}

TEST(CostSweep, FullUseOfHotCapacityIsCheapest) {
  const std::vector<double> grid{0, 5, 10, 15, 20};
  const auto res = theorem1_sweep(scenarios::logit_constant(), grid);
  ASSERT_EQ(res.points.size(), grid.size());
  for (std::size_t i = 1; i < res.points.size(); ++i) EXPECT_LT(res.points[i].cost.phi, res.points[i - 1].cost.phi);
  EXPECT_EQ(res.argmin_q3, 20.0);
  EXPECT_TRUE(res.argmin_at_capacity);
}

TEST(CostSweep, NoTollBaselineFromQueueGrowth) {
  // q3 = 0: HOT spare capacity 20 veh/min is wasted and the GP queue grows at
  // q1 + q2 - c1 - c2 + zeta = 30 veh/min from lambda2 = 2 (lambda1 drains first).
  auto cfg = scenarios::logit_constant();
  cfg.initial_lanes = {0.0, 2.0};
  const double grid[] = {0.0};
  const auto res = theorem1_sweep(cfg, grid);
  double phi2 = 0;
  for (int k = 0; k < 12000; ++k) phi2 += 60.0 * (2.0 + 30.0 * k * cfg.dt) / 30.0 * 0.5 * cfg.dt;
  EXPECT_NEAR(res.points[0].cost.phi2, phi2, 1e-6 * phi2);
}

TEST(CostSweep, RejectsBadInput) {
  EXPECT_THROW(theorem1_sweep(scenarios::logit_constant(), std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(theorem1_sweep(scenarios::logit_constant(), std::vector<double>{25}), std::invalid_argument);
  EXPECT_THROW(theorem1_sweep(scenarios::logit_poisson(), std::vector<double>{5}), AssumptionError);
}

TEST(Equilibrium, GrowthRate) {
  EXPECT_DOUBLE_EQ(equilibrium_profile(kDemand, kCaps), 1.0 / 3.0);
  EXPECT_THROW(equilibrium_profile({10, 50}, kCaps), AssumptionError);
}

TEST(Stability, HandComputedRoots) {
  // c = 0.5 + 0.1/(1/3 * 3) = 0.6; queue mode s^2 + (0.3/0.6)s + 0.06/0.6.
  const auto rep = stability_from_derivatives({0.5, 0.1}, 1.0 / 3.0, {0.06, 0.3, 1, 1}, 3.0);
  EXPECT_NEAR(rep.c, 0.6, 1e-15);
  EXPECT_NEAR(rep.mode1, -0.5, 1e-15);
  // s^2 + 0.5 s + 0.1: complex pair -0.25 +- i*sqrt(0.0375).
  EXPECT_NEAR(rep.mode2[0].real(), -0.25, 1e-15);
  EXPECT_NEAR(std::abs(rep.mode2[0].imag()), std::sqrt(0.0375), 1e-15);
  EXPECT_TRUE(rep.stable);
  EXPECT_FALSE(rep.stiff);
}

TEST(Stability, StiffWhenEigenvaluesOutrunTheStep) {
  const auto rep = stability_from_derivatives({0.001, 0.0}, 1.0, {1, 10, 1, 1}, 1.0, 0.1);
  EXPECT_GT(rep.max_abs_eigenvalue, 20.0);
  EXPECT_TRUE(rep.stiff);
}

TEST(Stability, RejectsNonPositiveC) {
  EXPECT_THROW(stability_from_derivatives({0.0, 0.0}, 1.0, {1, 1, 1, 1}, 1.0), AssumptionError);
  EXPECT_THROW(stability_from_derivatives({0.5, 0.0}, 1.0, {1, 1, 1, 1}, 0.0), std::invalid_argument);
}

TEST(Stability, RandomAdmissibleInstancesAreStable) {
  // Routh-Hurwitz for s^2 + p s + q holds iff p, q > 0; independently check
  // that each reported root satisfies its polynomial.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pos(1e-3, 10.0), unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Gains g{pos(rng), pos(rng), pos(rng), pos(rng)};
    AffineCoefficients d{pos(rng), pos(rng)};
    const double pick = unit(rng);
    if (pick < 0.2) d.a = 0.0;       // logit-like: A' = 0
    else if (pick < 0.4) d.b = 0.0;  // UE-like: B' = 0
    const double w0 = pos(rng), t = pos(rng);
    const auto rep = stability_from_derivatives(d, w0, g, t);
    const double c = d.a + d.b / (w0 * t);
    EXPECT_TRUE(rep.stable);
    EXPECT_NEAR(rep.mode1, -g.k2 / c, 1e-12 * g.k2 / c);
    for (const auto& s : rep.mode2) {
      EXPECT_LT(s.real(), 0.0);
      const auto residual = s * s + (g.k2 / c) * s + g.k1 / c;
      EXPECT_LT(std::abs(residual), 1e-9 * (1.0 + std::norm(s) + g.k1 / c));
    }
  }
}

TEST(Stability, BundledModelsAreStable) {
  const Gains g{0.1, 0.1, 0.2, 0.2};
  const auto logit = linearized_stability(LogitModel(0.5, 1.0), kDemand, kCaps, g, 3.44, 0.1 / 60);
  EXPECT_TRUE(logit.stable);
  const UeModel ue(make_vot_distribution(ExponentialVotSpec{2.0}));
  EXPECT_TRUE(linearized_stability(ue, kDemand, kCaps, g, 15.0, 0.1 / 60).stable);
}

TEST(Stability, DefaultEvaluationTime) {
  const auto tr = run(scenarios::logit_constant());
  EXPECT_NEAR(default_stability_time(tr), *detect_convergence(tr, 0.05, 0.05), 0.0);
  auto cfg = scenarios::logit_constant();
  cfg.horizon = 1.0;
  EXPECT_EQ(default_stability_time(run(cfg)), 0.5);
}

TEST(Stability, QueueFreeDecayMatchesModeOne) {
  // Gains with k4 small next to k2*w keep the affine-form approximation
  // accurate; measure d ln|zeta|/dt and compare to k2/c(t).
  auto cfg = scenarios::logit_constant();
  cfg.gains = {0.1, 0.1, 0.02, 0.02};
  cfg.initial_lanes = {0.0, 0.0};
  const auto model = make_choice_model(cfg.choice_model);
  const auto ab = affine_decomposition(*model, 0.0, kDemand, kCaps);
  cfg.initial_controller = {ab.a + 0.1, ab.b + 0.02};
  cfg.horizon = 10.0;
  const auto tr = run(cfg);
  const auto derivs = affine_derivatives_at_zero(*model, kDemand, kCaps);
  const double w0 = equilibrium_profile(kDemand, kCaps);

  auto zeta_at = [&](double t) { return tr.records[static_cast<std::size_t>(std::llround(t / cfg.dt))].zeta; };
  for (double t : {3.0, 5.0, 8.0}) {
    ASSERT_EQ(tr.records[static_cast<std::size_t>(std::llround(t / cfg.dt))].lambda1, 0.0);
    const double h = 0.5;
    const double measured = -(std::log(std::abs(zeta_at(t + h))) - std::log(std::abs(zeta_at(t - h)))) / (2 * h);
    const double predicted = -stability_from_derivatives(derivs, w0, cfg.gains, t).mode1;
    EXPECT_NEAR(measured / predicted, 1.0, 0.25) << "t=" << t;
  }
}

TEST(PriceSlope, ExactOnLinearPrices) {
  SimTrace tr;
  for (int i = 0; i < 100; ++i) {
    StepRecord r;
    r.t = i * 0.1;
    r.u_applied = 0.3 * r.t + 1.0;
    tr.records.push_back(r);
  }
  EXPECT_NEAR(price_slope(tr, 0.0), 0.3, 1e-12);
  EXPECT_NEAR(price_slope(tr, 5.0), 0.3, 1e-12);
  EXPECT_THROW(price_slope(tr, 100.0), std::invalid_argument);
}
