#include <gtest/gtest.h>

#include <cmath>

#include "mollab/varsol.hpp"

using namespace mollab;

namespace {

void expect_rel(Real got, Real want, Real tol) {
  EXPECT_LE(std::fabs(got / want - 1), tol) << "got " << static_cast<double>(got) << " want "
                                           << static_cast<double>(want);
}

ModeParams special_at(Real R) { return make_mode_special(std::sqrt(0.6L) / R); }

}  // namespace

TEST(Modes, SpecialCoefficients) {
  const ModeParams m = make_mode_special(0.5L);
  EXPECT_NEAR(static_cast<double>(m.R), std::sqrt(0.6) / 0.5, 1e-15);
  EXPECT_NEAR(static_cast<double>(m.c0), 1.6, 1e-15);
  EXPECT_EQ(m.c0, m.c1);
  EXPECT_EQ(m.c, -1);
  EXPECT_NEAR(static_cast<double>(m.phi_c), (1 + std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_FALSE(m.non_convex);
}

TEST(Modes, GeneralReducesToSpecial) {
  const Real theta = 0.25L;
  const ModeParams s = make_mode_special(theta);
  const ModeParams g = make_mode_general(theta, s.R, 1, 1.0L / 3, 1);
  EXPECT_NEAR(static_cast<double>(g.c0), static_cast<double>(s.c0), 1e-15);
  EXPECT_NEAR(static_cast<double>(g.c1), static_cast<double>(s.c1), 1e-15);
  EXPECT_NEAR(static_cast<double>(g.c), -1, 1e-15);
}

TEST(Modes, NonConvexFlagged) {
  // Long R makes c0 = C/theta - theta B R^2 negative.
  const ModeParams g = make_mode_general(0.5L, 4, 1, 1.0L / 3, 1);
  EXPECT_TRUE(g.non_convex);
  EXPECT_GT(g.c, 0);
}

TEST(Modes, RejectsBadC) {
  try {
    make_mode_ode(5, 0.25L, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
  try {
    make_mode_ode(5, -3.75L, 1);  // sqrt(1 - 4c) = 4
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateParameters);
  }
  EXPECT_THROW(make_mode_special(0), Error);
}

TEST(Components, ValuesAtZero) {
  const Components comp(-1);
  expect_rel(comp.g1_zero(), -1.074798357218488424L, 1e-17L);
  expect_rel(comp.g2_zero(), 0.7591368124312942147L, 1e-17L);
  const auto [v1, v2] = comp.v(0);
  expect_rel(v1, 0.3394963033637762526L, 1e-16L);
  expect_rel(v2, 0.4806644377691283802L, 1e-16L);
  expect_rel(comp.f_prime(0), -1.472770086289396845L, 1e-16L);
  expect_rel(comp.g0_prime(0), 0.6027750726140972737L, 1e-16L);
  EXPECT_NEAR(static_cast<double>(comp.f(0)), 0, 1e-18);
  EXPECT_NEAR(static_cast<double>(comp.g0(0)), 0.5, 1e-18);
}

TEST(Components, ValuesAwayFromZero) {
  const Components comp(-1);
  expect_rel(comp.f(2), -3.333256223709305696L, 1e-16L);
  expect_rel(comp.g0(2), 2.754186534345262381L, 1e-16L);
  expect_rel(comp.g1_prime(1), -3.899332638787625587L, 1e-16L);
}

TEST(Components, WronskianReferences) {
  expect_rel(Components(-1).wronskian(0), std::sqrt(5.0L) / 2, 1e-18L);
  expect_rel(Components(-1).wronskian(0.5L), 0.991493654143791917132354914951L, 1e-17L);
  expect_rel(Components(-1).wronskian(2), 0.297175926121978430535673391524L, 1e-17L);
  expect_rel(Components(-0.5L).wronskian(0), 0.866025403784438646763723170753L, 1e-16L);
  expect_rel(Components(-0.5L).wronskian(1), 0.561231464023997457175081577687L, 1e-16L);
  expect_rel(Components(-2.3L).wronskian(0), 1.59687194226713114428713439431L, 1e-16L);
  expect_rel(Components(-2.3L).wronskian(1), 1.03485968668016361296874151028L, 1e-16L);
  expect_rel(Components(0.1L).wronskian(0), 0.38729833462074168135146773173L, 1e-16L);
  expect_rel(Components(0.1L).wronskian(1), 0.250990340933877190663437454518L, 1e-16L);
}

class WronskianProperty : public ::testing::TestWithParam<double> {};

TEST_P(WronskianProperty, AbelFormMatchesDirect) {
  // Both direct forms cancel terms of size e^{(2 phi - 1) t} down to W ~ e^{-t}.
  const Components comp(GetParam());
  for (Real t : {0.0L, 0.2L, 0.35L, 1.0L, 2.0L, 4.0L}) {
    const Real tol = 1e-16L * std::exp((2 * comp.phi() - 1) * t);
    expect_rel(comp.wronskian_direct(t), comp.wronskian(t), tol);
    const Real direct = comp.g1(t) * comp.g2_prime(t) - comp.g1_prime(t) * comp.g2(t);
    expect_rel(direct, comp.wronskian(t), tol);
  }
}

TEST_P(WronskianProperty, HomogeneousEquation) {
  const Components comp(GetParam());
  const Real h = 1e-4L, c = comp.c();
  for (Real t : {0.3L, 1.0L, 2.5L}) {
    for (auto g : {&Components::g1, &Components::g2}) {
      const Real sp = (comp.*g)(t + h, 0), s0 = (comp.*g)(t, 0), sm = (comp.*g)(t - h, 0);
      const Real res = (sp - 2 * s0 + sm) / (h * h) + std::tanh(t) * (sp - sm) / (2 * h) + c * s0;
      EXPECT_LE(std::fabs(res), 1e-6L * (1 + std::fabs(s0)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SeveralC, WronskianProperty, ::testing::Values(-1.0, -0.5, -2.3, 0.1, -7.9));

TEST(Components, ShiftIsExponentialFactor) {
  const Components comp(-1);
  for (Real t : {0.5L, 3.0L, 20.0L}) {
    expect_rel(comp.f(t, -comp.growth()), comp.f(t) * std::exp(-comp.growth() * t), 1e-15L);
    expect_rel(comp.g1_prime(t, 0.7L), comp.g1_prime(t) * std::exp(0.7L * t), 1e-15L);
  }
}

TEST(Solution, C1References) {
  expect_rel(ClosedFormSolution(special_at(5)).C1(), 0.67414341559982922076L, 1e-15L);
  expect_rel(ClosedFormSolution(special_at(40)).C1(), 0.674123093447951L, 1e-12L);
  expect_rel(ClosedFormSolution(special_at(387)).C1(), 0.674123093447951L, 1e-12L);
}

TEST(Solution, BoundaryConditions) {
  for (Real R : {0.5L, 1.0L, 5.0L, 20.0L, 100.0L, 387.0L}) {
    const ClosedFormSolution sol(special_at(R));
    EXPECT_NEAR(static_cast<double>(sol.value(0)), 0.5, 1e-12);
    EXPECT_NEAR(static_cast<double>(sol.value(R)), 0, 1e-12);
  }
  const ClosedFormSolution sol(make_mode_ode(3, -0.5L, 1.4L));
  EXPECT_NEAR(static_cast<double>(sol.value(0)), 0.7, 1e-12);
  EXPECT_NEAR(static_cast<double>(sol.value(3)), 0.4, 1e-12);
}

TEST(Solution, EulerLagrangeResidual) {
  for (const ModeParams& m : {special_at(5), make_mode_ode(4, -2.3L, 1.3L), make_mode_ode(2, 0.1L, 0.8L)}) {
    const ClosedFormSolution sol(m);
    const Real h = 1e-4L;
    for (int i = 1; i < 20; ++i) {
      const Real t = m.R * i / 20;
      const Real sp = sol.value(t + h), s0 = sol.value(t), sm = sol.value(t - h);
      const Real res = (sp - 2 * s0 + sm) / (h * h) + std::tanh(t) * (sp - sm) / (2 * h) + m.c * s0 -
                       m.c * m.beta / (1 + std::exp(2 * t));
      EXPECT_LE(std::fabs(res), 1e-6L);
    }
  }
}

TEST(Solution, DerivativeMatchesDifferences) {
  const ClosedFormSolution sol(special_at(8));
  const Real h = 1e-5L;
  for (Real t : {0.0L, 0.3L, 2.0L, 7.5L}) {
    const Real lo = std::max<Real>(t - h, 0);
    const Real fd = (sol.value(t + h) - sol.value(lo)) / (t + h - lo);
    EXPECT_NEAR(static_cast<double>(sol.derivative(t)), static_cast<double>(fd), 1e-5);
  }
}

TEST(Solution, SampleMatchesPointwise) {
  const ClosedFormSolution sol(special_at(5));
  for (std::size_t n : {8u, 100u, 1000u}) {
    const auto pts = sol.sample(n);
    ASSERT_EQ(pts.size(), n + 1);
    for (std::size_t i = 0; i <= n; i += n / 4) {
      const Real t = 5.0L * i / n;
      EXPECT_NEAR(static_cast<double>(pts[i].S), static_cast<double>(sol.value(t)), 1e-14);
      EXPECT_NEAR(static_cast<double>(pts[i].dS), static_cast<double>(sol.derivative(t)), 1e-13);
    }
  }
}

TEST(Solution, WIntegralsLimits) {
  const ClosedFormSolution sol(special_at(40));
  const auto [w1, w2] = sol.w(60);
  EXPECT_NEAR(static_cast<double>(w1), 1.320841515, 1e-8);
  EXPECT_NEAR(static_cast<double>(w2), 2.816647252, 1e-8);
  const auto [a1, a2] = sol.w(0);
  EXPECT_EQ(a1, 0);
  EXPECT_EQ(a2, 0);
}

TEST(Solution, InfiniteParts) {
  const ClosedFormSolution sol(special_at(40));
  const auto p = sol.infinite_parts();
  EXPECT_NEAR(static_cast<double>(p.f), -2.11661310733791, 1e-12);
  EXPECT_NEAR(static_cast<double>(p.g0), 1.94529587267417, 1e-12);
  EXPECT_NEAR(static_cast<double>(p.g1w1), -4.29439382486671, 1e-12);
  EXPECT_NEAR(static_cast<double>(p.g2w2), 4.02454965556606, 1e-12);
  EXPECT_LT(p.tail, 1e-8);
}

TEST(Solution, ExpWeightedIntegral) {
  const ClosedFormSolution sol(special_at(5));
  EXPECT_NEAR(static_cast<double>(sol.exp_weighted_integral().value), 0.248557628960703, 1e-13);
  // For long intervals the affine large-R form takes over.
  const ClosedFormSolution far(special_at(60));
  EXPECT_NEAR(static_cast<double>(far.exp_weighted_integral().value),
              static_cast<double>(far.exp_weighted_integral_affine(far.infinite_parts())), 1e-8);
}

TEST(Solution, OneShotWrappersAgree) {
  const ModeParams m = special_at(5);
  const ClosedFormSolution sol(m);
  EXPECT_EQ(c1_constant(m), sol.C1());
  EXPECT_EQ(s_value(1.3L, m), sol.value(1.3L));
  EXPECT_EQ(s_prime_zero(m), sol.s_prime_zero());
  EXPECT_EQ(components_at(0.4L, m).g1, sol.components().g1(0.4L));
}

TEST(FarForm, AgreesWithClosedFormAtSwitch) {
  for (const ModeParams& m : {special_at(12), special_at(40), make_mode_ode(20, -2.3L, 1.3L)}) {
    const ClosedFormSolution sol(m);
    const Real ts = sol.switch_point();
    ASSERT_LT(ts, m.R);
    const Real h = 1e-9L;
    const Real scale = std::fabs(sol.value(ts)) + std::fabs(sol.derivative(ts));
    EXPECT_NEAR(static_cast<double>(sol.value(ts + h)), static_cast<double>(sol.value(ts)), 1e-9 * static_cast<double>(scale));
    EXPECT_NEAR(static_cast<double>(sol.derivative(ts + h)), static_cast<double>(sol.derivative(ts)),
                1e-8 * static_cast<double>(scale));
  }
}

TEST(FarForm, DerivativeRelativeAccuracy) {
  const ClosedFormSolution sol(special_at(30));
  const Real h = 1e-4L;
  for (Real t : {8.0L, 15.0L, 25.0L, 29.0L}) {
    const Real fd = (sol.value(t + h) - sol.value(t - h)) / (2 * h);
    expect_rel(sol.derivative(t), fd, 1e-7L);
  }
}

TEST(FarForm, NoCancellationAtLargeR) {
  // S(R/2) at R = 40; converged finite-difference value 1.41690251e-14.
  const ClosedFormSolution sol(special_at(40));
  expect_rel(sol.value(20), 1.41690251e-14L, 1e-7L);
  EXPECT_LT(std::fabs(sol.value(40)), 1e-30L);
  const ClosedFormSolution far(special_at(387));
  EXPECT_LT(std::fabs(far.value(387)), 1e-30L);
  EXPECT_LT(far.derivative(387), 0);
}
