#include "mollab/hyp2f1.hpp"

#include <cmath>
#include <sstream>

namespace mollab {

namespace {

bool non_positive_integer(Real s) { return s <= 0 && s == std::floor(s); }

bool near_integer(Real s) { return std::fabs(s - std::nearbyint(s)) < 1e-12L; }

std::string fmt_params(Real a, Real b, Real c, Real z) {
  std::ostringstream os;
  os.precision(17);
  os << "(a=" << static_cast<double>(a) << ", b=" << static_cast<double>(b)
     << ", c=" << static_cast<double>(c) << ", z=" << static_cast<double>(z) << ")";
  return os.str();
}

Real sum_series(Real a, Real b, Real c, Real z, const EvalConfig& cfg) {
  if (non_positive_integer(c)) {
    throw Error(ErrorCode::InvalidC, "c is a non-positive integer " + fmt_params(a, b, c, z));
  }
  if (!(std::fabs(z) < 1)) {
    throw Error(ErrorCode::InvalidArgument, "series needs |z| < 1 " + fmt_params(a, b, c, z));
  }
  Real term = 1;
  Real sum = 1;
  int small_run = 0;
  for (long k = 0; k < cfg.max_terms; ++k) {
    const Real kk = static_cast<Real>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1)) * z;
    sum += term;
    if (term == 0) return sum;  // terminating series
    if (std::fabs(term) < cfg.rel_tol * std::fabs(sum)) {
      if (++small_run == 3) return sum;
    } else {
      small_run = 0;
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "series exceeded max_terms " + fmt_params(a, b, c, z));
}

// Series or Pfaff, whichever has the smaller argument; z must be in (-inf, 1/2].
Real near_origin(Real a, Real b, Real c, Real z, const EvalConfig& cfg) {
  if (z >= -0.5L) return sum_series(a, b, c, z, cfg);
  return std::pow(1 - z, -a) * sum_series(a, c - b, c, z / (z - 1), cfg);
}

NegExpHyp2F1::Plan make_plan(Real a, Real b, Real c) {
  NegExpHyp2F1::Plan p;
  p.a = a;
  p.b = b;
  p.c = c;
  if (non_positive_integer(c)) {
    throw Error(ErrorCode::InvalidC, "c is a non-positive integer " + fmt_params(a, b, c, 0));
  }
  p.connection_ok = !near_integer(b - a);
  if (!p.connection_ok) return p;
  const SignedLog gc = log_gamma_signed(c);
  const SignedLog gba = log_gamma_signed(b - a);
  const SignedLog gab = log_gamma_signed(a - b);
  const SignedLog rb = log_rgamma_signed(b);
  const SignedLog ra = log_rgamma_signed(a);
  const SignedLog rca = log_rgamma_signed(c - a);
  const SignedLog rcb = log_rgamma_signed(c - b);
  p.pref_a = {gc.log_abs + gba.log_abs + rb.log_abs + rca.log_abs,
              gc.sign * gba.sign * rb.sign * rca.sign};
  p.pref_b = {gc.log_abs + gab.log_abs + ra.log_abs + rcb.log_abs,
              gc.sign * gab.sign * ra.sign * rcb.sign};
  return p;
}

// sign e^{log_abs + rate t}. The two factors are exponentiated separately so
// that equal rates give bitwise equal exponentials in different functions,
// which lets products of them cancel cleanly; the merged form is the fallback
// near overflow.
Real scaled_exp(const SignedLog& pref, Real rate, Real t) {
  const Real split = std::exp(pref.log_abs) * std::exp(rate * t);
  if (std::isfinite(split) && split != 0) return pref.sign * split;
  return pref.sign * std::exp(pref.log_abs + rate * t);
}

// exp(shift t) 2F1(a, b; c; -exp(2t)) from the connection formula, t >= 0.
Real connection(const NegExpHyp2F1::Plan& p, Real t, Real shift, const EvalConfig& cfg) {
  const Real x = -std::exp(-2 * t);
  Real out = 0;
  if (p.pref_a.sign != 0) {
    out += scaled_exp(p.pref_a, shift - 2 * p.a, t) * near_origin(p.a, p.a - p.c + 1, p.a - p.b + 1, x, cfg);
  }
  if (p.pref_b.sign != 0) {
    out += scaled_exp(p.pref_b, shift - 2 * p.b, t) * near_origin(p.b, p.b - p.c + 1, p.b - p.a + 1, x, cfg);
  }
  return out;
}

Real plan_value(const NegExpHyp2F1::Plan& p, Real t, Real shift, const EvalConfig& cfg) {
  if (t >= pfaff_connection_crossover(cfg)) {
    if (p.connection_ok) return connection(p, t, shift, cfg);
    const Real arg = 1 / (1 + std::exp(-2 * t));
    if (arg > 0.95L) {
      throw Error(ErrorCode::DegenerateParameters,
                  "b - a is an integer and -exp(2t) is too large for the Pfaff series " +
                      fmt_params(p.a, p.b, p.c, -std::exp(2 * t)));
    }
  }
  // z = -exp(2t) in [-phi, 0): Pfaff maps it to exp(2t)/(1+exp(2t)).
  const Real e2 = std::exp(2 * t);
  if (e2 <= 0.5L) return std::exp(shift * t) * sum_series(p.a, p.b, p.c, -e2, cfg);
  const Real arg = e2 / (1 + e2);
  return std::exp(shift * t - p.a * std::log1p(e2)) * sum_series(p.a, p.c - p.b, p.c, arg, cfg);
}

}  // namespace

void EvalConfig::validate() const {
  if (!(rel_tol > 0 && rel_tol < 1)) {
    throw Error(ErrorCode::InvalidArgument, "rel_tol must lie in (0, 1)");
  }
  if (max_terms <= 0) throw Error(ErrorCode::InvalidArgument, "max_terms must be positive");
  if (!(crossover_z > 0.5L && crossover_z < 1)) {
    throw Error(ErrorCode::InvalidArgument, "crossover_z must lie in (0.5, 1)");
  }
}

Real pfaff_connection_crossover(const EvalConfig& cfg) {
  return 0.5L * std::log(cfg.crossover_z / (1 - cfg.crossover_z));
}

Real hyp2f1_series(const HypArgs& args, const EvalConfig& cfg) {
  cfg.validate();
  return sum_series(args.a, args.b, args.c, args.z, cfg);
}

Real hyp2f1_pfaff(const HypArgs& args, const EvalConfig& cfg) {
  cfg.validate();
  if (!(args.z <= 0)) {
    throw Error(ErrorCode::InvalidArgument,
                "Pfaff path needs z <= 0 " + fmt_params(args.a, args.b, args.c, args.z));
  }
  const Real z = args.z;
  return std::pow(1 - z, -args.a) * sum_series(args.a, args.c - args.b, args.c, z / (z - 1), cfg);
}

Real hyp2f1_neg(Real a, Real b, Real c, Real t, const EvalConfig& cfg) {
  cfg.validate();
  if (!(t >= 0)) throw Error(ErrorCode::InvalidArgument, "hyp2f1_neg needs t >= 0");
  const NegExpHyp2F1::Plan p = make_plan(a, b, c);
  if (!p.connection_ok) {
    throw Error(ErrorCode::DegenerateParameters,
                "b - a is an integer " + fmt_params(a, b, c, -std::exp(2 * t)));
  }
  return connection(p, t, 0, cfg);
}

Real hyp2f1(const HypArgs& args, const EvalConfig& cfg) {
  cfg.validate();
  const Real z = args.z;
  if (!(z < 1)) {
    throw Error(ErrorCode::InvalidArgument, "z must be < 1 " + fmt_params(args.a, args.b, args.c, z));
  }
  if (z >= -0.5L) return sum_series(args.a, args.b, args.c, z, cfg);
  if (z / (z - 1) <= cfg.crossover_z) return hyp2f1_pfaff(args, cfg);
  return hyp2f1_neg(args.a, args.b, args.c, 0.5L * std::log(-z), cfg);
}

Real hyp2f1_deriv(const HypArgs& args, const EvalConfig& cfg) {
  const Real scale = args.a * args.b / args.c;
  if (scale == 0) return 0;
  return scale * hyp2f1({args.a + 1, args.b + 1, args.c + 1, args.z}, cfg);
}

NegExpHyp2F1::NegExpHyp2F1(Real a, Real b, Real c, const EvalConfig& cfg)
    : base_(make_plan(a, b, c)), shifted_(make_plan(a + 1, b + 1, c + 1)), cfg_(cfg) {
  cfg_.validate();
}

Real NegExpHyp2F1::value(Real t, Real shift) const { return plan_value(base_, t, shift, cfg_); }

Real NegExpHyp2F1::derivative(Real t, Real shift) const {
  const Real scale = base_.a * base_.b / base_.c;
  Real d = shift * value(t, shift);
  if (scale != 0) d -= 2 * scale * plan_value(shifted_, t, shift + 2, cfg_);
  return d;
}

Real NegExpHyp2F1::leading_coefficient_a() const {
  return base_.pref_a.sign * std::exp(base_.pref_a.log_abs);
}

Real NegExpHyp2F1::leading_coefficient_b() const {
  return base_.pref_b.sign * std::exp(base_.pref_b.log_abs);
}

}  // namespace mollab
