#include "phasefront/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasefront/error.hpp"

namespace phasefront {

bool is_valid(const State& s) {
  return std::isfinite(s.v) && std::isfinite(s.u) && std::isfinite(s.a) &&
         s.v > 0.0 && s.a > 0.0;
}

void require_valid(const State& s, const char* what) {
  if (!is_valid(s)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": state needs finite v > 0 and a > 0");
  }
}

double pressure(const State& s) { return s.pressure(); }

std::pair<double, double> char_speeds(const State& s) {
  const double lam = s.a / s.v;
  return {-lam, lam};
}

double h(double eps) { return eps >= 0.0 ? eps : std::sinh(eps); }

double h_derivative(double eps) { return eps >= 0.0 ? 1.0 : std::cosh(eps); }

double curve_shift(double eps, Curve curve) {
  return curve == Curve::Lax ? h(eps) : eps;
}

double curve_shift_derivative(double eps, Curve curve) {
  return curve == Curve::Lax ? h_derivative(eps) : 1.0;
}

double contact_strength(double a_minus, double a_plus) {
  return 2.0 * (a_plus - a_minus) / (a_plus + a_minus);
}

double sound_after_contact(double a_minus, double delta) {
  return a_minus * (2.0 + delta) / (2.0 - delta);
}

State apply_wave(const State& origin, const WaveStrength& w, Curve curve) {
  State out = origin;
  switch (w.family) {
    case Family::One:
      out.v = origin.v * std::exp(2.0 * w.epsilon);
      out.u = origin.u + 2.0 * origin.a * curve_shift(w.epsilon, curve);
      break;
    case Family::Three:
      out.v = origin.v * std::exp(-2.0 * w.epsilon);
      out.u = origin.u + 2.0 * origin.a * curve_shift(w.epsilon, curve);
      break;
    case Family::Two: {
      if (!(w.epsilon > -2.0 && w.epsilon < 2.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "contact strength must lie in (-2, 2)");
      }
      out.a = sound_after_contact(origin.a, w.epsilon);
      const double ratio = out.a / origin.a;
      out.v = origin.v * ratio * ratio;
      break;
    }
    default:
      throw Error(ErrorCode::InvalidArgument, "invalid wave family");
  }
  if (!(out.v > 0.0) || !std::isfinite(out.v)) {
    throw Error(ErrorCode::InvalidArgument,
                "wave leaves the phase space (v not positive/finite)");
  }
  return out;
}

double rh_speed(double a, double v_left, double v_right, Family family) {
  const double s = a / std::sqrt(v_left * v_right);
  return family == Family::One ? -s : s;
}

std::pair<double, double> rh_residuals(const State& left, const State& right,
                                       double speed) {
  const double dv = right.v - left.v;
  const double du = right.u - left.u;
  const double dp = right.pressure() - left.pressure();
  const double scale1 = std::max({std::abs(speed * dv), std::abs(du), 1e-300});
  const double scale2 = std::max({std::abs(speed * du), std::abs(dp), 1e-300});
  return {(speed * dv + du) / scale1, (speed * du - dp) / scale2};
}

double shock_speed(const State& left, const State& right, Family family) {
  require_valid(left, "shock_speed left");
  require_valid(right, "shock_speed right");
  if (family != Family::One && family != Family::Three) {
    throw Error(ErrorCode::InvalidArgument, "shock family must be 1 or 3");
  }
  if (left.a != right.a) {
    throw Error(ErrorCode::InvalidArgument,
                "shock states must share the sound coefficient");
  }
  const double s = rh_speed(left.a, left.v, right.v, family);
  if (left.v == right.v && left.u == right.u) return s;
  const auto [r1, r2] = rh_residuals(left, right, s);
  if (std::abs(r1) > 1e-10 || std::abs(r2) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument,
                "states are not joined by a single shock of this family");
  }
  return s;
}

double c_fn(double z) {
  // (cosh z - 1) / (cosh z + 1) == tanh^2(z / 2), without overflow.
  const double t = std::tanh(0.5 * z);
  return t * t;
}

double C0(double rho) {
  if (std::abs(rho) < 1e-4) return 1.0 + rho * rho / 6.0;
  return std::sinh(rho) / rho;
}

int sign_of(double x, double zero_tol) {
  if (x > zero_tol) return 1;
  if (x < -zero_tol) return -1;
  return 0;
}

}  // namespace phasefront
