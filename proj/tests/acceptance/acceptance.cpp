// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "mollab/hyp2f1.hpp"
#include "mollab/kappa.hpp"
#include "mollab/oracle.hpp"
#include "mollab/siegel.hpp"
#include "mollab/verify.hpp"

using namespace mollab;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s %d %-26s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModeParams special_at(Real R) { return make_mode_special(std::sqrt(0.6L) / R); }

// Distance in units of the last printed digit.
double units(Real measured, Real printed, Real unit) {
  return static_cast<double>(std::fabs(measured - printed) / unit);
}

void kappa_table() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_asym = 0, worst_exact = 0;
  for (const auto& e : published_kappa_table()) {
    worst_asym = std::max(worst_asym, units(kappa_special(e.theta, KappaRoute::Asymptotic).kappa, e.kappa, e.unit));
    if (e.theta <= 0.25L) {
      worst_exact = std::max(worst_exact, units(kappa_special(e.theta, KappaRoute::Exact).kappa, e.kappa, e.unit));
    }
  }
  const double wall = seconds_since(t0);
  report(1, "kappa_table", worst_asym <= 2 && worst_exact <= 2 && wall <= 10,
         fmt("asymptotic route %.3g units, exact route (theta<=1/4) %.3g units, limit 2; %.2fs", worst_asym,
             worst_exact, wall));
}

void named_constants() {
  const ClosedFormSolution sol40(special_at(40));
  const auto [w1, w2] = sol40.w(60);
  const Components comp(-1);
  const auto [v1, v2] = comp.v(0);
  struct Item {
    Real measured, printed, unit;
  };
  const std::vector<Item> items = {
      {comp.g1_zero(), -1.07479L, 1e-5L}, {comp.g2_zero(), 0.759136L, 1e-6L},
      {v1, 0.339496L, 1e-6L},             {v2, 0.480664L, 1e-6L},
      {comp.f_prime(0), -1.47277L, 1e-5L}, {comp.g0_prime(0), 0.602775L, 1e-6L},
  };
  double worst = 0;
  for (const auto& it : items) worst = std::max(worst, units(it.measured, it.printed, it.unit));
  const double ew1 = static_cast<double>(std::fabs(w1 - 1.3208L));
  const double ew2 = static_cast<double>(std::fabs(w2 - 2.8166L));
  const double ec = static_cast<double>(std::fabs(sol40.C1() - 0.674L));
  report(2, "named_constants", ew1 <= 2e-3 && ew2 <= 2e-3 && ec <= 5e-3 && worst <= 1,
         fmt("|w1(inf)-1.3208|=%.2g |w2(inf)-2.8166|=%.2g |C1(40)-0.674|=%.2g", ew1, ew2, ec) +
             fmt("; section constants within %.3g units", worst));
}

void component_integrals() {
  const ClosedFormSolution sol(special_at(40));
  const auto p = sol.infinite_parts();
  double worst = std::max({units(p.f, -2.1166L, 1e-4L), units(p.g0, 1.9453L, 1e-4L),
                           units(p.g1w1, -4.294L, 1e-3L), units(p.g2w2, 4.024L, 1e-3L)});
  const Real lhs = sol.exp_weighted_integral().value;
  const double gap = static_cast<double>(std::fabs(lhs - (-2.1166L * sol.C1() + 1.675L)));
  report(3, "component_integrals", worst <= 2 && gap <= 5e-3,
         fmt("integrals within %.3g units (limit 2); affine identity at R=40 off by %.2g (limit 5e-3)", worst, gap));
}

void asymptotic_extraction() {
  const auto k = asymptotic_constants();
  const double e_csc = static_cast<double>(std::fabs(k.at("Fm_measured") / k.at("csc") - 1));
  const double e_gam = static_cast<double>(std::fabs(k.at("Fp_measured") / k.at("gamma_ratio") - 1));
  report(4, "asymptotic_closed_forms", e_csc <= 1e-5 && e_gam <= 1e-5,
         fmt("csc relative %.2g, gamma ratio relative %.2g, limit 1e-5", e_csc, e_gam));
}

void oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  double bvp = 0;
  for (Real R : {1.0L, 5.0L, 10.0L}) {
    const ClosedFormSolution sol(special_at(R));
    bvp = std::max(bvp, compare_profiles(sample_closed_form(sol, 100000), bvp_solve(sol.mode(), 100000)).sup_err);
  }
  const ModeParams mode = special_at(5);
  const double dm = compare_profiles(bvp_solve(mode, 10000), discrete_minimize(mode, 10000)).sup_err;
  const ClosedFormSolution sol(mode);
  const double e1 = compare_profiles(sample_closed_form(sol, 2000), bvp_solve(mode, 2000)).sup_err;
  const double e2 = compare_profiles(sample_closed_form(sol, 4000), bvp_solve(mode, 4000)).sup_err;
  const double ratio = e1 / e2;
  const double wall = seconds_since(t0);
  report(5, "oracle_equivalence", bvp <= 1e-6 && dm <= 1e-5 && ratio >= 3.5 && ratio <= 4.5 && wall <= 60,
         fmt("bvp sup %.2g (limit 1e-6), minimizer sup %.2g (limit 1e-5), ", bvp, dm) +
             fmt("richardson %.3f in [3.5, 4.5]; %.1fs", ratio, wall));
}

void minimality() {
  const ClosedFormSolution sol(special_at(5));
  const VariationProbe probe(sol);
  const Real R = sol.mode().R;
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> coef(0, 1);
  double min_gap = 1e300, worst_ratio = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Real> a(4);
    for (auto& x : a) x = coef(rng);
    const auto h = [&](Real t) {
      Real v = 0, dv = 0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const Real w = (k + 1) * M_PIl / R;
        v += a[k] * std::sin(w * t);
        dv += a[k] * w * std::cos(w * t);
      }
      return std::pair<Real, Real>{v, dv};
    };
    for (Real eps : {0.01L, -0.01L, 0.001L, -0.001L}) {
      const Real d1 = probe.delta_k(h, eps), d2 = probe.delta_k(h, 2 * eps);
      min_gap = std::min(min_gap, static_cast<double>(std::min(d1, d2)));
      worst_ratio = std::max(worst_ratio, std::fabs(static_cast<double>(d2 / d1) - 4));
    }
  }
  report(6, "stationarity_minimality", min_gap >= -1e-9 && worst_ratio <= 0.2,
         fmt("min K(S+eps h)-K(S) %.3g (limit -1e-9); max |dK(2eps)/dK(eps)-4| %.2g (limit 0.2)", min_gap,
             worst_ratio));
}

void invariants() {
  double bc = 0, sym = 0, ode = 0, wr = 0;
  for (Real R : {1.0L, 5.0L, 10.0L}) {
    const ClosedFormSolution sol(special_at(R));
    bc = std::max({bc, static_cast<double>(std::fabs(sol.value(0) - 0.5L)), static_cast<double>(std::fabs(sol.value(R)))});
    for (int i = 0; i <= 20; ++i) {
      const Real y = i / 20.0L;
      sym = std::max(sym, static_cast<double>(std::fabs(q_value(sol, y) + q_value(sol, 1 - y) - 1)));
    }
    ode = std::max(ode, stencil_residual(sample_closed_form(sol, 20000), sol.mode()));
  }
  {
    // Derivative and hypergeometric forms of the Wronskian against the Abel
    // form on u in [0, 10]; the sign is fixed at u = 0.
    const Components comp(-1);
    const auto derived = [&](Real u) { return comp.g1(u) * comp.g2_prime(u) - comp.g1_prime(u) * comp.g2(u); };
    const Real sign = derived(0) * comp.wronskian(0) > 0 ? 1 : -1;
    for (int i = 0; i <= 40; ++i) {
      const Real u = i / 4.0L;
      const Real abel = sign * comp.wronskian(u);
      wr = std::max({wr, static_cast<double>(std::fabs(derived(u) / abel - 1)),
                     static_cast<double>(std::fabs(comp.wronskian_direct(u) / comp.wronskian(u) - 1))});
    }
  }
  report(7, "structural_invariants", bc <= 1e-9 && sym <= 1e-12 && ode <= 1e-6 && wr <= 1e-8,
         fmt("boundary %.2g (1e-9), Q symmetry %.2g (1e-12), ", bc, sym) +
             fmt("ODE residual %.2g (1e-6), Wronskian relative %.2g (1e-8)", ode, wr));
}

void two_thirds() {
  double margin = 1e300, at = 0;
  for (int i = 1; i <= 50; ++i) {
    const Real theta = 0.01L + 0.49L * i / 50;
    const double m = static_cast<double>(kappa_special(theta).kappa - 2 * theta / 3);
    if (m < margin) {
      margin = m;
      at = static_cast<double>(theta);
    }
  }
  report(8, "kappa_above_two_thirds", margin > 0,
         fmt("min kappa-(2/3)theta = %.4g at theta=%.4g on 50 points; numerical evidence, not a proof", margin, at));
}

void step_limit() {
  const auto q = step_limit_scan(0.75L, {5, 10, 20, 40});
  bool decreasing = true;
  for (std::size_t i = 1; i < q.size(); ++i) decreasing = decreasing && q[i] < q[i - 1];
  report(9, "step_limit", decreasing && q.back() <= 1e-2,
         fmt("Q_R(0.75) at R=5,10,20,40: %.3g %.3g ", static_cast<double>(q[0]), static_cast<double>(q[1])) +
             fmt("%.3g %.3g; decreasing=", static_cast<double>(q[2]), static_cast<double>(q[3])) +
             (decreasing ? "yes" : "no"));
}

}  // namespace

int main() {
  const std::vector<void (*)()> steps = {kappa_table, named_constants, component_integrals,
                                         asymptotic_extraction, oracle_equivalence, minimality,
                                         invariants, two_thirds, step_limit};
  int id = 1;
  for (auto step : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      report(id, "exception", false, e.what());
    }
    ++id;
  }
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
