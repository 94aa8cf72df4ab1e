#include "mollab/oracle.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "mollab/kernels.hpp"

namespace mollab {

namespace {

// 1 / (1 + e^{2t}) without overflow for large t.
Real source_weight(Real t) {
  if (t > 0) {
    const Real e = std::exp(-2 * t);
    return e / (1 + e);
  }
  return 1 / (1 + std::exp(2 * t));
}

void check_n(std::size_t n, std::size_t minimum) {
  if (n < minimum) {
    std::ostringstream os;
    os << "grid needs at least " << minimum << " intervals";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

// Thomas elimination for lo[i] x[i-1] + di[i] x[i] + up[i] x[i+1] = rhs[i].
// Returns the smallest pivot magnitude seen; throws on a zero pivot.
std::vector<Real> solve_tridiagonal(std::vector<Real> lo, std::vector<Real> di,
                                    std::vector<Real> up, std::vector<Real> rhs,
                                    Real* min_pivot) {
  const std::size_t m = di.size();
  Real smallest = std::fabs(di[0]);
  for (std::size_t i = 1; i < m; ++i) {
    if (di[i - 1] == 0) throw Error(ErrorCode::SingularSystem, "zero pivot");
    const Real f = lo[i] / di[i - 1];
    di[i] -= f * up[i - 1];
    rhs[i] -= f * rhs[i - 1];
    smallest = std::min(smallest, std::fabs(di[i]));
  }
  if (di[m - 1] == 0) throw Error(ErrorCode::SingularSystem, "zero pivot");
  std::vector<Real> x(m);
  x[m - 1] = rhs[m - 1] / di[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) x[i] = (rhs[i] - up[i] * x[i + 1]) / di[i];
  if (min_pivot) *min_pivot = smallest;
  return x;
}

SolutionProfile assemble(const ModeParams& mode, std::size_t n, const std::vector<Real>& interior) {
  SolutionProfile p;
  p.grid = uniform_grid(static_cast<double>(mode.R), n);
  p.values.resize(n + 1);
  p.values[0] = static_cast<double>(mode.beta / 2);
  p.values[n] = static_cast<double>(mode.beta - 1);
  for (std::size_t i = 1; i < n; ++i) p.values[i] = static_cast<double>(interior[i - 1]);
  p.derivs = difference_derivative(p.grid, p.values);
  return p;
}

}  // namespace

SolutionProfile bvp_solve(const ModeParams& mode, std::size_t n) {
  check_n(n, 100);
  const Real R = mode.R, c = mode.c, beta = mode.beta;
  const Real h = R / static_cast<Real>(n);
  const std::size_t m = n - 1;
  // Rows scaled by h^2.
  std::vector<Real> lo(m), di(m), up(m), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Real t = h * static_cast<Real>(k + 1);
    const Real p = 0.5L * h * std::tanh(t);
    lo[k] = 1 - p;
    di[k] = -2 + c * h * h;
    up[k] = 1 + p;
    rhs[k] = h * h * c * beta * source_weight(t);
  }
  rhs[0] -= lo[0] * (beta / 2);
  rhs[m - 1] -= up[m - 1] * (beta - 1);
  Real pivot = 0;
  auto x = solve_tridiagonal(lo, di, up, rhs, &pivot);
  if (pivot < 1e-14L) {
    std::ostringstream os;
    os << "near-singular finite-difference system, smallest pivot " << static_cast<double>(pivot);
    throw Error(ErrorCode::SingularSystem, os.str());
  }
  return assemble(mode, n, x);
}

SolutionProfile discrete_minimize(const ModeParams& mode, std::size_t n, bool allow_non_convex) {
  check_n(n, 4);
  if (mode.non_convex && !allow_non_convex) {
    throw Error(ErrorCode::IndefiniteForm, "c0 < 0: the discrete functional may be indefinite");
  }
  const Real R = mode.R, c0 = mode.c0, c1 = mode.c1, beta = mode.beta;
  const Real h = R / static_cast<Real>(n);
  auto t = [&](std::size_t i) { return h * static_cast<Real>(i); };
  // a_i: trapezoid weight of 2 c1 cosh on cell [t_i, t_{i+1}].
  std::vector<Real> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = c1 * (std::cosh(t(i)) + std::cosh(t(i + 1)));
  // Half of the gradient, divided by h:
  //   c0 (2 cosh t_j S_j - beta e^-t_j) + (a_{j-1} (S_j - S_{j-1}) - a_j (S_{j+1} - S_j)) / h^2 = 0
  const std::size_t m = n - 1;
  std::vector<Real> lo(m), di(m), up(m), rhs(m);
  const Real ih2 = 1 / (h * h);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = k + 1;
    lo[k] = -a[j - 1] * ih2;
    up[k] = -a[j] * ih2;
    di[k] = 2 * c0 * std::cosh(t(j)) + (a[j - 1] + a[j]) * ih2;
    rhs[k] = c0 * beta * std::exp(-t(j));
  }
  rhs[0] -= lo[0] * (beta / 2);
  rhs[m - 1] -= up[m - 1] * (beta - 1);
  // The system matrix is the (scaled) Hessian; positive pivots certify
  // positive definiteness.
  std::vector<Real> d = di;
  Real smallest = d[0];
  for (std::size_t i = 1; i < m; ++i) {
    d[i] -= lo[i] / d[i - 1] * up[i - 1];
    smallest = std::min(smallest, d[i]);
  }
  if (smallest <= 0 && !allow_non_convex) {
    std::ostringstream os;
    os << "Hessian is not positive definite, most negative pivot "
       << static_cast<double>(smallest);
    throw Error(ErrorCode::IndefiniteForm, os.str());
  }
  auto x = solve_tridiagonal(lo, di, up, rhs, nullptr);
  return assemble(mode, n, x);
}

Real discrete_functional(const SolutionProfile& p, const ModeParams& mode) {
  const std::size_t n1 = p.size();
  if (n1 < 2 || p.values.size() != n1) throw Error(ErrorCode::InvalidProfile, "empty profile");
  const Real c0 = mode.c0, c1 = mode.c1, beta = mode.beta;
  Real K = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    const Real t = p.grid[i], s = p.values[i];
    const Real w = (i == 0 || i + 1 == n1) ? 0.5L : 1.0L;
    const Real h = i + 1 < n1 ? p.grid[i + 1] - p.grid[i] : p.grid[i] - p.grid[i - 1];
    K += w * h * c0 * (std::exp(t) * s * s + std::exp(-t) * (beta - s) * (beta - s));
  }
  for (std::size_t i = 0; i + 1 < n1; ++i) {
    const Real h = static_cast<Real>(p.grid[i + 1]) - p.grid[i];
    const Real d = (static_cast<Real>(p.values[i + 1]) - p.values[i]) / h;
    K += h * c1 * (std::cosh(static_cast<Real>(p.grid[i])) + std::cosh(static_cast<Real>(p.grid[i + 1]))) * d * d;
  }
  return K;
}

SolutionProfile sample_closed_form(const ClosedFormSolution& sol, std::size_t n) {
  const auto pts = sol.sample(n);
  SolutionProfile p;
  p.grid = uniform_grid(static_cast<double>(sol.mode().R), n);
  p.values.resize(n + 1);
  p.derivs.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    p.values[i] = static_cast<double>(pts[i].S);
    p.derivs[i] = static_cast<double>(pts[i].dS);
  }
  return p;
}

ProfileDiff compare_profiles(const SolutionProfile& a, const SolutionProfile& b) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n || a.values.size() != n || b.values.size() != n) {
    throw Error(ErrorCode::GridMismatch, "profiles have different sizes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::max(1.0, std::fabs(a.grid[i]));
    if (std::fabs(a.grid[i] - b.grid[i]) > 1e-12 * scale) {
      throw Error(ErrorCode::GridMismatch, "profiles are sampled on different grids");
    }
  }
  const kernels::Norms nrm = kernels::diff_norms(a.values.data(), b.values.data(), n);
  const double span = n > 1 ? a.grid.back() - a.grid.front() : 1.0;
  return {nrm.sup, std::sqrt(nrm.sumsq * span / static_cast<double>(n))};
}

Real full_interval_functional(const SolutionProfile& p, const ModeParams& mode) {
  const std::size_t n1 = p.size();
  if (n1 < 2 || p.derivs.size() != n1) {
    throw Error(ErrorCode::InvalidProfile, "profile needs derivative values");
  }
  const Real c0 = mode.c0, c1 = mode.c1, beta = mode.beta;
  // Mirrored nodes -t_i with S(-t) = beta - S(t) and S'(-t) = S'(t).
  auto integrand_pos = [&](std::size_t i) {
    const Real s = p.values[i], d = p.derivs[i];
    return std::exp(static_cast<Real>(p.grid[i])) * (c0 * s * s + c1 * d * d);
  };
  auto integrand_neg = [&](std::size_t i) {
    const Real s = beta - p.values[i], d = p.derivs[i];
    return std::exp(-static_cast<Real>(p.grid[i])) * (c0 * s * s + c1 * d * d);
  };
  Real K = 0;
  for (std::size_t i = 0; i + 1 < n1; ++i) {
    const Real h = static_cast<Real>(p.grid[i + 1]) - p.grid[i];
    K += 0.5L * h * (integrand_pos(i) + integrand_pos(i + 1));
    K += 0.5L * h * (integrand_neg(i) + integrand_neg(i + 1));
  }
  return K;
}

double stencil_residual(const SolutionProfile& p, const ModeParams& mode) {
  const std::size_t n1 = p.size();
  if (n1 < 3) throw Error(ErrorCode::InvalidProfile, "stencil needs >= 3 nodes");
  const double h = (p.grid.back() - p.grid.front()) / static_cast<double>(n1 - 1);
  std::vector<double> th(n1), src(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    th[i] = std::tanh(p.grid[i]);
    src[i] = static_cast<double>(mode.c * mode.beta * source_weight(p.grid[i]));
  }
  return kernels::stencil_residual_max(p.values.data(), th.data(), src.data(), n1, h,
                                       static_cast<double>(mode.c));
}

VariationProbe::VariationProbe(const ClosedFormSolution& sol, std::size_t panels)
    : mode_(sol.mode()) {
  using Legendre = boost::math::quadrature::gauss<Real, 10>;
  if (panels == 0) throw Error(ErrorCode::InvalidArgument, "panels must be positive");
  const Real h = mode_.R / static_cast<Real>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const Real mid = (static_cast<Real>(p) + 0.5L) * h;
    for (std::size_t k = 0; k < Legendre::abscissa().size(); ++k) {
      const Real x = Legendre::abscissa()[k], w = Legendre::weights()[k];
      for (int sign : {1, -1}) {
        if (x == 0 && sign < 0) continue;
        t_.push_back(mid + sign * x * h / 2);
        wt_.push_back(w * h / 2);
      }
    }
  }
  s_.resize(t_.size());
  ds_.resize(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) {
    s_[i] = sol.value(t_[i]);
    ds_[i] = sol.derivative(t_[i]);
  }
}

Real VariationProbe::delta_k(const Perturbation& h, Real eps) const {
  const Real c0 = mode_.c0, c1 = mode_.c1, beta = mode_.beta;
  Real sum = 0;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    const auto [v, dv] = h(t_[i]);
    const Real ep = std::exp(t_[i]), em = std::exp(-t_[i]);
    // Expanded difference of the integrands; no large terms cancel.
    const Real lin = ep * (c0 * s_[i] * v + c1 * ds_[i] * dv) +
                     em * (-c0 * (beta - s_[i]) * v + c1 * ds_[i] * dv);
    const Real quad = (ep + em) * (c0 * v * v + c1 * dv * dv);
    sum += wt_[i] * (2 * eps * lin + eps * eps * quad);
  }
  return sum;
}

}  // namespace mollab
