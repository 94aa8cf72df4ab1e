#include <gtest/gtest.h>

#include <cmath>

#include "mollab/siegel.hpp"

using namespace mollab;

TEST(Siegel, StepFunction) {
  EXPECT_EQ(step_function(0.2L), 1);
  EXPECT_EQ(step_function(0.5L), 0.5L);
  EXPECT_EQ(step_function(0.9L), 0);
}

TEST(Siegel, QSymmetry) {
  const ClosedFormSolution sol(make_mode_special(std::sqrt(0.6L) / 7));
  for (int i = 0; i <= 40; ++i) {
    const Real y = i / 40.0L;
    EXPECT_NEAR(static_cast<double>(q_value(sol, y) + q_value(sol, 1 - y)), 1, 1e-12);
  }
  EXPECT_NEAR(static_cast<double>(q_value(sol, 0.5L)), 0.5, 1e-15);
  EXPECT_NEAR(static_cast<double>(q_value(sol, 0)), 1, 1e-12);
  EXPECT_NEAR(static_cast<double>(q_value(sol, 1)), 0, 1e-12);
}

TEST(Siegel, ScanDecreasesTowardStep) {
  const auto q = step_limit_scan(0.75L, {5, 10, 20, 40});
  ASSERT_EQ(q.size(), 4u);
  EXPECT_NEAR(static_cast<double>(q[0]), 0.021221, 1e-6);
  EXPECT_NEAR(static_cast<double>(q[1]), 4.4665e-4, 1e-8);
  for (std::size_t i = 1; i < q.size(); ++i) EXPECT_LT(q[i], q[i - 1]);
  EXPECT_LT(q.back(), 1e-11);
  const auto low = step_limit_scan(0.25L, {5, 10, 20});
  for (std::size_t i = 1; i < low.size(); ++i) EXPECT_GT(low[i], low[i - 1]);
}

TEST(Siegel, ScanNeedsIncreasingR) {
  EXPECT_THROW(step_limit_scan(0.75L, {10, 5}), Error);
}

TEST(Siegel, AsymptoticConstants) {
  const auto k = asymptotic_constants();
  EXPECT_NEAR(static_cast<double>(k.at("csc")), -2.7595731033624024711, 1e-15);
  EXPECT_NEAR(static_cast<double>(k.at("gamma_ratio")), 1.24279750518341881353, 1e-15);
  EXPECT_NEAR(static_cast<double>(k.at("Fm_measured") / k.at("csc")), 1, 1e-10);
  EXPECT_NEAR(static_cast<double>(k.at("Fp_measured") / k.at("gamma_ratio")), 1, 1e-10);
  EXPECT_NEAR(static_cast<double>(k.at("v1_measured")), 0.555795940771454, 1e-12);
  EXPECT_NEAR(static_cast<double>(k.at("v2_measured")), 1.23411860959968, 1e-12);
}

TEST(Siegel, GrowthEnvelopeBounded) {
  for (Real R : {5.0L, 20.0L, 60.0L}) {
    const ClosedFormSolution sol(make_mode_special(std::sqrt(0.6L) / R));
    EXPECT_LT(growth_envelope(sol), 1);
  }
}
