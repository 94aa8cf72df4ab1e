#include <gtest/gtest.h>

#include <cmath>

#include "mollab/oracle.hpp"

using namespace mollab;

namespace {

ModeParams special_at(Real R) { return make_mode_special(std::sqrt(0.6L) / R); }

}  // namespace

TEST(Oracle, BvpMatchesClosedForm) {
  const ModeParams m = special_at(5);
  const ClosedFormSolution sol(m);
  const ProfileDiff d = compare_profiles(sample_closed_form(sol, 100000), bvp_solve(m, 100000));
  EXPECT_LT(d.sup_err, 1e-9);
  EXPECT_LE(d.l2_err, d.sup_err * std::sqrt(5.0) + 1e-300);
}

TEST(Oracle, BvpMatchesFarForm) {
  // R = 40 is evaluated mostly through the decaying/growing form.
  const ModeParams m = special_at(40);
  const ClosedFormSolution sol(m);
  EXPECT_LT(compare_profiles(sample_closed_form(sol, 200000), bvp_solve(m, 200000)).sup_err, 1e-9);
}

TEST(Oracle, BvpSecondOrder) {
  const ModeParams m = special_at(5);
  const ClosedFormSolution sol(m);
  const double e1 = compare_profiles(sample_closed_form(sol, 1000), bvp_solve(m, 1000)).sup_err;
  const double e2 = compare_profiles(sample_closed_form(sol, 2000), bvp_solve(m, 2000)).sup_err;
  EXPECT_NEAR(e1 / e2, 4, 0.3);
}

TEST(Oracle, OdeModesWithOtherC) {
  for (const ModeParams& m : {make_mode_ode(3, -2.3L, 1.2L), make_mode_ode(2, 0.1L, 1)}) {
    const ClosedFormSolution sol(m);
    EXPECT_LT(compare_profiles(sample_closed_form(sol, 20000), bvp_solve(m, 20000)).sup_err, 1e-7);
  }
}

TEST(Oracle, DiscreteMinimizerMatchesBvp) {
  const ModeParams m = special_at(5);
  EXPECT_LT(compare_profiles(bvp_solve(m, 10000), discrete_minimize(m, 10000)).sup_err, 1e-5);
}

TEST(Oracle, DiscreteMinimizerIsMinimal) {
  const ModeParams m = special_at(3);
  const SolutionProfile best = discrete_minimize(m, 400);
  const Real k0 = discrete_functional(best, m);
  SolutionProfile p = best;
  for (std::size_t i = 1; i + 1 < p.size(); i += 37) {
    p.values[i] += 1e-3;
    EXPECT_GT(discrete_functional(p, m), k0);
    p.values[i] = best.values[i];
  }
}

TEST(Oracle, NonConvexNeedsOptIn) {
  const ModeParams m = make_mode_general(0.5L, 4, 1, 1.0L / 3, 1);
  ASSERT_TRUE(m.non_convex);
  try {
    discrete_minimize(m, 200);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndefiniteForm);
  }
}

TEST(Oracle, GridChecks) {
  EXPECT_THROW(bvp_solve(special_at(5), 10), Error);
  const ModeParams m = special_at(5);
  const ClosedFormSolution sol(m);
  try {
    compare_profiles(sample_closed_form(sol, 100), sample_closed_form(sol, 200));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(Oracle, StencilResidualSmallForClosedForm) {
  const ModeParams m = special_at(5);
  const ClosedFormSolution sol(m);
  EXPECT_LT(stencil_residual(sample_closed_form(sol, 20000), m), 1e-6);
  // The BVP solves the stencil exactly.
  EXPECT_LT(stencil_residual(bvp_solve(m, 20000), m), 1e-6);
}

TEST(Oracle, VariationIsQuadratic) {
  const ClosedFormSolution sol(special_at(5));
  const VariationProbe probe(sol);
  const Real pi = std::acos(-1.0L);
  const auto h = [&](Real t) {
    return std::pair<Real, Real>{std::sin(pi * t / 5) + 0.3L * std::sin(3 * pi * t / 5),
                                 pi / 5 * std::cos(pi * t / 5) + 0.9L * pi / 5 * std::cos(3 * pi * t / 5)};
  };
  for (Real eps : {0.01L, -0.01L, 0.001L}) {
    const Real d1 = probe.delta_k(h, eps), d2 = probe.delta_k(h, 2 * eps);
    EXPECT_GT(d1, 0);
    EXPECT_NEAR(static_cast<double>(d2 / d1), 4, 1e-6);
  }
}
