#include "mollab/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "mollab/kappa.hpp"
#include "mollab/oracle.hpp"
#include "mollab/siegel.hpp"

namespace mollab {

namespace {

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

// Max relative gap between the Pfaff and connection evaluations.
double hyp_overlap(int points) {
  const Real phi = 0.5L * (1 + std::sqrt(5.0L)), m = -1 / phi;
  const Real triples[4][3] = {{0.5L, phi, 0.5L + phi},
                              {0.5L, m, 0.5L + m},
                              {0.5L, 1 + phi, 0.5L + phi},
                              {1.5L, m, 0.5L + m}};
  double worst = 0;
  for (const auto& p : triples) {
    for (int i = 0; i < points; ++i) {
      const Real t = static_cast<Real>(i) / (points - 1);
      const Real a = hyp2f1_pfaff({p[0], p[1], p[2], -std::exp(2 * t)});
      const Real b = hyp2f1_neg(p[0], p[1], p[2], t);
      worst = std::max(worst, static_cast<double>(std::fabs(a - b) / std::fabs(b)));
    }
  }
  return worst;
}

double ode_residual(const ClosedFormSolution& sol, const ModeParams& claimed, int points) {
  const Real R = sol.mode().R, h = 1e-4L;
  double worst = 0;
  for (int i = 1; i <= points; ++i) {
    const Real t = R * i / (points + 1);
    const Real sp = sol.value(t + h), s0 = sol.value(t), sm = sol.value(t - h);
    const Real d2 = (sp - 2 * s0 + sm) / (h * h);
    const Real d1 = (sp - sm) / (2 * h);
    const Real src = claimed.c * claimed.beta / (1 + std::exp(2 * t));
    worst = std::max(worst, static_cast<double>(std::fabs(d2 + std::tanh(t) * d1 + claimed.c * s0 - src)));
  }
  return worst;
}

}  // namespace

const std::vector<TableEntry>& published_kappa_table() {
  static const std::vector<TableEntry> t = {
      {2.0L / 3, 0.364L, 1e-3L},   {0.5L, 0.334L, 1e-3L},     {0.25L, 0.176L, 1e-3L},
      {1.0L / 6, 0.114L, 1e-3L},   {0.125L, 0.0854L, 1e-4L},  {5.0L / 54, 0.0632L, 1e-4L},
      {0.01L, 0.00682L, 1e-5L},    {0.002L, 0.00136L, 1e-5L},
  };
  return t;
}

bool VerifyReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s %-28s measured=%-12.4g threshold=%-10.3g", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.threshold);
    os << buf;
    if (!c.detail.empty()) os << ' ' << c.detail;
    os << '\n';
  }
  os << (all_pass() ? "all checks passed" : "verification FAILED") << '\n';
  return os.str();
}

std::string VerifyReport::json() const {
  nlohmann::json j;
  j["pass"] = all_pass();
  j["wall_time_s"] = wall_time_s;
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"measured", c.measured},
                           {"threshold", c.threshold},
                           {"pass", c.pass},
                           {"detail", c.detail}});
  }
  return j.dump(2);
}

VerifyReport run_verify(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const bool full = opts.level == VerifyLevel::Full;
  VerifyReport rep;

  rep.checks.push_back(at_most("hyp2f1_overlap", hyp_overlap(full ? 51 : 11), 1e-10));

  {
    const Components comp(-1);
    const ClosedFormSolution sol(make_mode_ode(5, -1, 1), opts.quad);
    const auto [v1, v2] = comp.v(0);
    const Real got[] = {comp.g1_zero(), comp.g2_zero(), v1, v2, comp.f_prime(0), comp.g0_prime(0)};
    const Real want[] = {-1.07479L, 0.759136L, 0.339496L, 0.480664L, -1.47277L, 0.602775L};
    const Real unit[] = {1e-5L, 1e-6L, 1e-6L, 1e-6L, 1e-5L, 1e-6L};
    double worst = 0;
    for (int i = 0; i < 6; ++i) {
      worst = std::max(worst, static_cast<double>(std::fabs(got[i] - want[i]) / unit[i]));
    }
    rep.checks.push_back(at_most("named_constants", worst, 1, "units of the last printed digit"));
  }

  {
    const ModeParams mode = make_mode_special(std::sqrt(0.6L) / 5);
    const ClosedFormSolution sol(mode, opts.quad);
    ModeParams claimed = mode;
    claimed.c1 *= 1 + opts.tamper_c1;
    claimed.c = -claimed.c0 / claimed.c1;
    rep.checks.push_back(at_most("ode_residual", ode_residual(sol, claimed, 200), 1e-6, "R=5"));
  }

  {
    double worst = 0;
    for (Real R : {1.0L, 2.0L, 5.0L, 10.0L, 20.0L}) {
      const ClosedFormSolution sol(make_mode_special(std::sqrt(0.6L) / R), opts.quad);
      worst = std::max(worst, static_cast<double>(std::fabs(sol.value(0) - 0.5L)));
      worst = std::max(worst, static_cast<double>(std::fabs(sol.value(R))));
    }
    rep.checks.push_back(at_most("boundary_conditions", worst, 1e-9));
  }

  {
    const std::size_t n = full ? 100000 : 20000;
    double worst = 0;
    const std::vector<Real> Rs = full ? std::vector<Real>{1, 5, 10} : std::vector<Real>{5};
    for (Real R : Rs) {
      const ClosedFormSolution sol(make_mode_special(std::sqrt(0.6L) / R), opts.quad);
      worst = std::max(worst, compare_profiles(sample_closed_form(sol, n), bvp_solve(sol.mode(), n)).sup_err);
    }
    rep.checks.push_back(at_most("oracle_bvp", worst, 1e-6, "n=" + std::to_string(n)));
  }

  if (full) {
    const ModeParams mode = make_mode_special(std::sqrt(0.6L) / 5);
    const double gap = compare_profiles(bvp_solve(mode, 10000), discrete_minimize(mode, 10000)).sup_err;
    rep.checks.push_back(at_most("oracle_discrete_minimizer", gap, 1e-5, "n=10000"));
    const ClosedFormSolution sol(mode, opts.quad);
    const double e1 = compare_profiles(sample_closed_form(sol, 2000), bvp_solve(mode, 2000)).sup_err;
    const double e2 = compare_profiles(sample_closed_form(sol, 4000), bvp_solve(mode, 4000)).sup_err;
    const double ratio = e1 / e2;
    rep.checks.push_back({"richardson_ratio", ratio, 4, ratio >= 3.5 && ratio <= 4.5, "expected in [3.5, 4.5]"});
  }

  {
    double worst_asym = 0, worst_exact = 0;
    for (const auto& e : published_kappa_table()) {
      const Real a = kappa_special(e.theta, KappaRoute::Asymptotic, opts.quad).kappa;
      worst_asym = std::max(worst_asym, static_cast<double>(std::fabs(a - e.kappa) / e.unit));
      if (e.theta <= 0.25L) {
        const Real x = kappa_special(e.theta, KappaRoute::Exact, opts.quad).kappa;
        worst_exact = std::max(worst_exact, static_cast<double>(std::fabs(x - e.kappa) / e.unit));
      }
    }
    rep.checks.push_back(at_most("kappa_table_asymptotic", worst_asym, 2, "units of the last printed digit"));
    rep.checks.push_back(at_most("kappa_table_exact", worst_exact, 2, "theta <= 1/4"));
  }

  {
    const int n = full ? 50 : 10;
    double margin = 1e300;
    for (int i = 1; i <= n; ++i) {
      const Real theta = 0.01L + (0.5L - 0.01L) * i / n;
      margin = std::min(margin, static_cast<double>(kappa_special(theta, KappaRoute::Exact, opts.quad).kappa - 2 * theta / 3));
    }
    rep.checks.push_back({"kappa_above_two_thirds_theta", margin, 0, margin > 0,
                          "numerical evidence on a grid, not a proof"});
  }

  {
    const auto q = step_limit_scan(0.75L, {5, 10, 20, 40}, opts.quad);
    bool decreasing = true;
    for (std::size_t i = 1; i < q.size(); ++i) decreasing = decreasing && q[i] < q[i - 1];
    const double last = static_cast<double>(q.back());
    rep.checks.push_back({"step_limit", last, 1e-2, decreasing && last <= 1e-2,
                          decreasing ? "Q_R(0.75) decreasing in R" : "Q_R(0.75) not decreasing"});
  }

  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace mollab
