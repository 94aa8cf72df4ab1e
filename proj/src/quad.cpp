#include "mollab/quad.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>
#include <vector>

namespace mollab {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<Real, 15>;
using Gauss = boost::math::quadrature::gauss<Real, 7>;

struct Panel {
  Real lo, hi;
  Real value, error;
  int depth;
};

struct WorseFirst {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.lo > y.lo;  // deterministic tie-break
  }
};

Panel rule(const Integrand& f, Real lo, Real hi, int depth) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const Real mid = 0.5L * (lo + hi);
  const Real half = 0.5L * (hi - lo);
  const Real f0 = f(mid);
  Real k = wk[0] * f0;
  Real g = wg[0] * f0;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const Real s = f(mid - half * xk[i]) + f(mid + half * xk[i]);
    k += wk[i] * s;
    if (i % 2 == 0) g += wg[i / 2] * s;  // Gauss nodes are the even Kronrod nodes
  }
  k *= half;
  g *= half;
  if (!std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "integrand is not finite");
  return {lo, hi, k, std::fabs(k - g), depth};
}

QuadResult collect(std::vector<Panel> panels) {
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  QuadResult r;
  for (const Panel& p : panels) {
    r.value += p.value;
    r.error_estimate += p.error;
  }
  r.panels_used = static_cast<long>(panels.size());
  return r;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
  if (!(rel_tol > 0)) throw Error(ErrorCode::InvalidArgument, "rel_tol must be positive");
  if (max_depth < 10) throw Error(ErrorCode::InvalidArgument, "max_depth must be at least 10");
  if (initial_panels < 1) throw Error(ErrorCode::InvalidArgument, "initial_panels must be >= 1");
  if (!(truncation > 0)) throw Error(ErrorCode::InvalidArgument, "truncation must be positive");
}

QuadResult integrate(const Integrand& f, Real lo, Real hi, const QuadConfig& cfg) {
  cfg.validate();
  if (!(lo <= hi)) throw Error(ErrorCode::InvalidArgument, "integrate needs lo <= hi");
  if (lo == hi) return {0, 0, 0};

  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> heap;
  Real value = 0, error = 0;
  const Real width = (hi - lo) / cfg.initial_panels;
  for (int i = 0; i < cfg.initial_panels; ++i) {
    const Real a = lo + width * i;
    const Real b = (i + 1 == cfg.initial_panels) ? hi : lo + width * (i + 1);
    Panel p = rule(f, a, b, 0);
    value += p.value;
    error += p.error;
    heap.push(p);
  }

  std::vector<Panel> frozen;  // panels that hit max_depth
  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(value)); };
  while (error > target() && !heap.empty()) {
    Panel p = heap.top();
    heap.pop();
    if (p.depth >= cfg.max_depth) {
      frozen.push_back(p);
      continue;
    }
    const Real mid = 0.5L * (p.lo + p.hi);
    Panel left = rule(f, p.lo, mid, p.depth + 1);
    Panel right = rule(f, mid, p.hi, p.depth + 1);
    value += left.value + right.value - p.value;
    error += left.error + right.error - p.error;
    heap.push(left);
    heap.push(right);
  }

  std::vector<Panel> all = std::move(frozen);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  QuadResult r = collect(std::move(all));
  if (r.error_estimate > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(r.value))) {
    r.error_estimate *= 10;
    throw QuadDepthError("tolerance not met within max_depth", r);
  }
  return r;
}

Real tail_bound(Real decay_rate, Real amplitude, Real U) {
  if (!(decay_rate > 0)) throw Error(ErrorCode::InvalidArgument, "decay_rate must be positive");
  return amplitude * std::exp(-decay_rate * U) / decay_rate;
}

}  // namespace mollab
