#include "phasefront/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasefront/error.hpp"

namespace phasefront {

namespace {

constexpr int kMaxBracketDoublings = 80;
constexpr int kMaxBisections = 400;
constexpr double kBisectionWidth = 1e-13;
constexpr int kNewtonPolish = 3;

// Root of the strictly increasing map
//   e -> a_minus Theta1(e) + a_plus Theta3(e + shift) - target.
double solve_strength(double a_minus, double a_plus, double shift,
                      double target, Curve theta1, Curve theta3) {
  auto f = [&](double e) {
    return a_minus * curve_shift(e, theta1) +
           a_plus * curve_shift(e + shift, theta3) - target;
  };
  auto df = [&](double e) {
    return a_minus * curve_shift_derivative(e, theta1) +
           a_plus * curve_shift_derivative(e + shift, theta3);
  };

  double lo = -1.0;
  double hi = 1.0;
  int doublings = 0;
  while (f(lo) > 0.0) {
    hi = lo;
    lo *= 2.0;
    if (++doublings > kMaxBracketDoublings) {
      throw Error(ErrorCode::SolverFailure, "strength bracket (low) diverged");
    }
  }
  doublings = 0;
  while (f(hi) < 0.0) {
    lo = std::max(lo, hi);
    hi *= 2.0;
    if (++doublings > kMaxBracketDoublings) {
      throw Error(ErrorCode::SolverFailure, "strength bracket (high) diverged");
    }
  }

  int iter = 0;
  while (hi - lo > kBisectionWidth * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    (fm < 0.0 ? lo : hi) = mid;
    if (++iter > kMaxBisections) {
      throw Error(ErrorCode::SolverFailure, "strength bisection did not converge");
    }
  }

  double e = 0.5 * (lo + hi);
  for (int k = 0; k < kNewtonPolish; ++k) {
    const double fe = f(e);
    if (fe == 0.0) break;
    const double next = e - fe / df(e);
    if (!(next >= lo && next <= hi)) break;
    e = next;
  }
  if (!std::isfinite(e)) {
    throw Error(ErrorCode::SolverFailure, "strength solver produced non-finite value");
  }
  return e;
}

}  // namespace

double PatternResiduals::max_abs() const {
  return std::max({std::abs(log_pressure), std::abs(velocity), std::abs(contact)});
}

PatternResiduals pattern_residuals(const State& left, const State& right,
                                   const RiemannPattern& p) {
  PatternResiduals r;
  r.log_pressure =
      (p.eps3 - p.eps1) - 0.5 * std::log(right.pressure() / left.pressure());
  const double lhs1 = left.a * curve_shift(p.eps1, p.theta1);
  const double lhs3 = right.a * curve_shift(p.eps3, p.theta3);
  const double rhs = 0.5 * (right.u - left.u);
  const double scale = std::max({std::abs(lhs1), std::abs(lhs3), std::abs(rhs),
                                 std::abs(left.u), std::abs(right.u), 1.0});
  r.velocity = (lhs1 + lhs3 - rhs) / scale;
  r.contact = p.delta - contact_strength(left.a, right.a);
  return r;
}

State apply_pattern(const State& left, const RiemannPattern& p) {
  State s = apply_wave(left, {Family::One, p.eps1}, p.theta1);
  s = apply_wave(s, {Family::Two, p.delta});
  return apply_wave(s, {Family::Three, p.eps3}, p.theta3);
}

RiemannPattern solve_pre_riemann(const State& left, const State& right,
                                 Curve theta1, Curve theta3) {
  require_valid(left, "solve_pre_riemann left");
  require_valid(right, "solve_pre_riemann right");

  RiemannPattern p;
  p.theta1 = theta1;
  p.theta3 = theta3;
  p.delta = contact_strength(left.a, right.a);

  const double shift = 0.5 * std::log(right.pressure() / left.pressure());
  const double target = 0.5 * (right.u - left.u);
  if (shift == 0.0 && target == 0.0) return p;

  if (theta1 == Curve::Integral && theta3 == Curve::Integral) {
    p.eps1 = (target - right.a * shift) / (left.a + right.a);
  } else {
    p.eps1 = solve_strength(left.a, right.a, shift, target, theta1, theta3);
  }
  p.eps3 = p.eps1 + shift;
  return p;
}

RiemannPattern solve_initial(const State& left, const State& right) {
  return solve_pre_riemann(left, right, Curve::Lax, Curve::Lax);
}

double CompositeWave::attached_size() const {
  return std::abs(d01) + std::abs(d03);
}

CompositeStates composite_states(const CompositeWave& cw, const State& left) {
  CompositeStates s;
  s.left = left;
  s.after_d01 = apply_wave(left, {Family::One, cw.d01}, Curve::Integral);
  State c = s.after_d01;
  c.a = cw.a_plus;
  const double ratio = cw.a_plus / cw.a_minus;
  c.v = s.after_d01.v * ratio * ratio;
  s.after_contact = c;
  s.right = apply_wave(c, {Family::Three, cw.d03}, Curve::Integral);
  return s;
}

const char* to_string(CompositeSolver s) {
  switch (s) {
    case CompositeSolver::Transparent: return "transparent";
    case CompositeSolver::Accurate: return "accurate";
    case CompositeSolver::Simplified: return "simplified";
  }
  return "unknown";
}

CompositeOutcome interact_with_composite(const WaveStrength& incoming,
                                         Side side, const CompositeWave& cw,
                                         const State& u_minus,
                                         const State& u_plus, double rho) {
  if (incoming.family == Family::One && side != Side::FromRight) {
    throw Error(ErrorCode::InvalidArgument,
                "a family-1 wave can only reach a composite from the right");
  }
  if (incoming.family == Family::Three && side != Side::FromLeft) {
    throw Error(ErrorCode::InvalidArgument,
                "a family-3 wave can only reach a composite from the left");
  }
  if (incoming.family == Family::Two) {
    throw Error(ErrorCode::InvalidArgument, "incoming wave must be of family 1 or 3");
  }
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  }

  CompositeOutcome out;
  out.updated = cw;
  out.absorbed_family =
      incoming.family == Family::One ? Family::Three : Family::One;

  if (incoming.epsilon == 0.0) {
    out.solver = CompositeSolver::Transparent;
    out.pattern.delta = cw.delta();
    return out;
  }

  if (cw.a_minus == cw.a_plus) {
    // Without a contact the tilde states differ by the incoming wave alone.
    out.solver = CompositeSolver::Transparent;
    out.pattern.delta = 0.0;
    if (incoming.family == Family::One) {
      out.pattern.eps1 = out.eps1 = incoming.epsilon;
    } else {
      out.pattern.eps3 = out.eps3 = incoming.epsilon;
    }
    return out;
  }

  const State tilde_minus =
      apply_wave(u_minus, {Family::One, cw.d01}, Curve::Integral);
  const State tilde_plus =
      apply_wave(u_plus, {Family::Three, -cw.d03}, Curve::Integral);

  if (std::abs(incoming.epsilon) >= rho) {
    out.solver = CompositeSolver::Accurate;
    out.pattern = solve_pre_riemann(tilde_minus, tilde_plus, Curve::Lax, Curve::Lax);
    out.eps1 = out.pattern.eps1;
    out.eps3 = out.pattern.eps3;
    return out;
  }

  out.solver = CompositeSolver::Simplified;
  if (incoming.family == Family::One) {
    out.pattern = solve_pre_riemann(tilde_minus, tilde_plus, Curve::Lax, Curve::Integral);
    out.eps1 = out.pattern.eps1;
    out.absorbed = out.pattern.eps3;
    out.updated.d03 = cw.d03 + out.pattern.eps3;
  } else {
    out.pattern = solve_pre_riemann(tilde_minus, tilde_plus, Curve::Integral, Curve::Lax);
    out.eps3 = out.pattern.eps3;
    out.absorbed = out.pattern.eps1;
    out.updated.d01 = cw.d01 + out.pattern.eps1;
  }
  return out;
}

bool CompositeCheck::ok() const {
  return std::abs(log_pressure_residual) <= 1e-11 &&
         std::abs(velocity_residual) <= 1e-11 && signs_ok && identity_ok &&
         estimate_ok;
}

CompositeCheck check_composite_interaction(const WaveStrength& incoming,
                                           const CompositeWave& before,
                                           const CompositeOutcome& outcome,
                                           double rho) {
  CompositeCheck chk;
  const bool from_right = incoming.family == Family::One;
  const double di = incoming.epsilon;
  const double delta = before.delta();
  const RiemannPattern& p = outcome.pattern;
  const double a_m = before.a_minus;
  const double a_p = before.a_plus;

  const double e_i = from_right ? p.eps1 : p.eps3;
  const double e_j = from_right ? p.eps3 : p.eps1;

  // Balance relations expressed through the incoming strength.
  const double lhs_p = p.eps3 - p.eps1;
  const double rhs_p = from_right ? -di : di;
  chk.log_pressure_residual = lhs_p - rhs_p;
  const double lhs_u = a_m * curve_shift(p.eps1, p.theta1) +
                       a_p * curve_shift(p.eps3, p.theta3);
  const double rhs_u = from_right ? a_p * h(di) : a_m * h(di);
  const double scale =
      std::max({std::abs(rhs_u), std::abs(a_m * curve_shift(p.eps1, p.theta1)),
                std::abs(a_p * curve_shift(p.eps3, p.theta3)), 1.0});
  chk.velocity_residual = (lhs_u - rhs_u) / scale;

  const int s_in = sign_of(di, 0.0);
  const int s_delta = sign_of(delta, 0.0);
  const int s_ei = sign_of(e_i);
  const int s_ej = sign_of(e_j);
  if (s_ei != 0 && s_ei != s_in) chk.signs_ok = false;
  const int expected_j = from_right ? s_delta * s_in : -s_delta * s_in;
  if (s_ej != 0 && s_ej != expected_j) chk.signs_ok = false;

  chk.reflected = std::abs(e_j);
  const double mismatch = std::abs(std::abs(e_i - di) - std::abs(e_j));
  chk.identity_ok = mismatch <= 1e-11 * std::max(1.0, std::abs(di));

  double bound = 0.5 * std::abs(di * delta);
  const bool flagged = di < 0.0 && ((from_right && delta > 0.0) ||
                                    (!from_right && delta < 0.0));
  if (outcome.solver == CompositeSolver::Simplified && flagged) {
    bound *= C0(rho);
  }
  chk.bound = bound;
  chk.estimate_ok = chk.reflected <= bound * (1.0 + 1e-9) + 1e-14;
  return chk;
}

RiemannPattern interact_same_family(const WaveStrength& alpha,
                                    const WaveStrength& beta,
                                    const State& left) {
  if (alpha.family != beta.family ||
      (alpha.family != Family::One && alpha.family != Family::Three)) {
    throw Error(ErrorCode::InvalidArgument,
                "same-family interaction needs two waves of family 1 or 3");
  }
  RiemannPattern p;
  if (beta.epsilon == 0.0 || alpha.epsilon == 0.0) {
    const double e = alpha.epsilon + beta.epsilon;
    (alpha.family == Family::One ? p.eps1 : p.eps3) = e;
    return p;
  }
  const State mid = apply_wave(left, alpha);
  const State right = apply_wave(mid, beta);
  return solve_initial(left, right);
}

RiemannPattern interact_different_family(const WaveStrength& left_wave,
                                         const WaveStrength& right_wave,
                                         const State& left) {
  if (left_wave.family != Family::Three || right_wave.family != Family::One) {
    throw Error(ErrorCode::InvalidArgument,
                "crossing waves must be a family-3 wave left of a family-1 wave");
  }
  require_valid(left, "interact_different_family");
  RiemannPattern p;
  p.eps1 = right_wave.epsilon;
  p.eps3 = left_wave.epsilon;
  return p;
}

}  // namespace phasefront
