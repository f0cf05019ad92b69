#include <gtest/gtest.h>

#include <random>

#include "hotlane/queue_dynamics.hpp"

using namespace hotlane;

namespace {
const Capacities kCaps{30, 30};
const DemandSample kDemand{10, 60};
}  // namespace

TEST(QueueStep, HandWorkedStep) {
  // zeta = 2: HOT queue drains by 2*dt, GP absorbs (70 - 60 + 2)*dt.
  const auto s = queue_step({1.0, 2.0}, kDemand, 2.0, kCaps, 0.5);
  EXPECT_DOUBLE_EQ(s.lambda1, 0.0);
  EXPECT_DOUBLE_EQ(s.lambda2, 8.0);
}

TEST(QueueStep, NegativeResidualGrowsHotQueue) {
  const auto s = queue_step({0.0, 0.0}, kDemand, -4.0, kCaps, 0.25);
  EXPECT_DOUBLE_EQ(s.lambda1, 1.0);
  EXPECT_DOUBLE_EQ(s.lambda2, 1.5);
}

TEST(QueueStep, ClampsAtZero) {
  // Spare HOT capacity drains lambda1 past zero; a deficit of -100 leaves
  // the GP lane with far less inflow than capacity.
  const auto drained = queue_step({0.1, 0.1}, {0, 0}, 100.0, kCaps, 1.0);
  EXPECT_EQ(drained.lambda1, 0.0);
  EXPECT_DOUBLE_EQ(drained.lambda2, 40.1);
  const auto starved = queue_step({0.1, 0.1}, {0, 0}, -100.0, kCaps, 1.0);
  EXPECT_DOUBLE_EQ(starved.lambda1, 100.1);
  EXPECT_EQ(starved.lambda2, 0.0);
}

TEST(QueueingTimeDiff, Formula) {
  EXPECT_DOUBLE_EQ(queueing_time_diff({1.0, 2.0}, kCaps), 1.0 / 30.0);
  EXPECT_DOUBLE_EQ(queueing_time_diff({6.0, 3.0}, {20, 10}), 0.0);
  EXPECT_LT(queueing_time_diff({5.0, 0.0}, kCaps), 0.0);
}

TEST(QueueProperty, NeverNegativeUnderRandomResiduals) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> zeta(-50.0, 50.0);
  std::uniform_real_distribution<double> flow(0.0, 80.0);
  LaneState s{0.0, 0.0};
  for (int i = 0; i < 100000; ++i) {
    s = queue_step(s, {flow(rng), flow(rng)}, zeta(rng), kCaps, 0.05);
    ASSERT_GE(s.lambda1, 0.0);
    ASSERT_GE(s.lambda2, 0.0);
  }
}

TEST(QueueProperty, GpConservationWhileQueued) {
  // Telescoping: with lambda2 > 0 throughout, the net change equals the sum
  // of (q1 + q2 - c1 - c2 + zeta)*dt.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> zeta(-5.0, 5.0);
  const double dt = 0.01;
  LaneState s{0.0, 50.0};
  const double start = s.lambda2;
  double inflow = 0.0;
  const int steps = 5000;
  for (int i = 0; i < steps; ++i) {
    const double z = zeta(rng);
    inflow += (kDemand.q1 + kDemand.q2 - kCaps.c1 - kCaps.c2 + z) * dt;
    s = queue_step(s, kDemand, z, kCaps, dt);
    ASSERT_GT(s.lambda2, 0.0);
  }
  EXPECT_NEAR(s.lambda2 - start, inflow, 1e-9 * steps);
}

TEST(QueueProperty, EquilibriumGrowthRate) {
  // zeta = 0 with q1 + q2 - c1 - c2 = 10: lambda2 grows at c2*w0 = 10 veh/min.
  const double w0 = (kDemand.q1 + kDemand.q2 - kCaps.c1 - kCaps.c2) / kCaps.c2;
  EXPECT_DOUBLE_EQ(w0, 1.0 / 3.0);
  LaneState s{0.0, 0.0};
  const double dt = 0.1 / 60.0;
  for (int i = 0; i < 600; ++i) s = queue_step(s, kDemand, 0.0, kCaps, dt);
  EXPECT_NEAR(s.lambda2, kCaps.c2 * w0 * 600 * dt, 1e-9);
  EXPECT_EQ(s.lambda1, 0.0);
}
