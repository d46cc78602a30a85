#pragma once

// Phase-space states, pressure law and wave curves of the isothermal
// phase-transition system
//
//   v_t - u_x = 0,  u_t + p(v, lambda)_x = 0,  lambda_t = 0,
//
// with p = a(lambda)^2 / v. The dynamics only see lambda through the sound
// coefficient a, so a state stores `a` directly.

#include <utility>

namespace phasefront {

// Strengths whose magnitude is at or below this value are treated as zero.
inline constexpr double kZeroStrength = 1e-12;

struct State {
  double v = 1.0;  // specific volume, > 0
  double u = 0.0;  // velocity
  double a = 1.0;  // sound coefficient a(lambda), > 0

  double pressure() const { return a * a / v; }
};

bool is_valid(const State& s);

// Throws Error(InvalidArgument) when v or a is not positive and finite.
void require_valid(const State& s, const char* what);

enum class Family { One = 1, Two = 2, Three = 3 };

// Which parametrisation a family-1/3 wave follows: the Lax curve
// (shock branch uses sinh) or the integral curve (linear in u).
enum class Curve { Lax, Integral };

struct WaveStrength {
  Family family = Family::One;
  double epsilon = 0.0;  // > 0 rarefaction, < 0 shock (families 1, 3)

  bool is_shock() const { return epsilon < 0.0; }
  bool is_rarefaction() const { return epsilon > 0.0; }
};

double pressure(const State& s);

// (-a/v, +a/v). The middle eigenvalue is 0.
std::pair<double, double> char_speeds(const State& s);

// h(e) = e for e >= 0, sinh(e) for e < 0.
double h(double eps);
double h_derivative(double eps);

// Theta = h on Lax curves, identity on integral curves.
double curve_shift(double eps, Curve curve);
double curve_shift_derivative(double eps, Curve curve);

// Strength of the contact between sound coefficients a_minus and a_plus.
double contact_strength(double a_minus, double a_plus);

// Inverse of contact_strength for fixed a_minus.
double sound_after_contact(double a_minus, double delta);

State apply_wave(const State& origin, const WaveStrength& w,
                 Curve curve = Curve::Lax);

// Rankine-Hugoniot speed of a family-1 or family-3 shock joining `left` to
// `right`. Throws if the states are not RH-compatible to 1e-10 relative.
double shock_speed(const State& left, const State& right, Family family);

// Closed form s = -/+ a / sqrt(v_left v_right); no compatibility check.
double rh_speed(double a, double v_left, double v_right, Family family);

// The two Rankine-Hugoniot residuals s(v+ - v-) + (u+ - u-) and
// s(u+ - u-) - (p+ - p-), each divided by a natural scale.
std::pair<double, double> rh_residuals(const State& left, const State& right,
                                       double speed);

// c(z) = (cosh z - 1) / (cosh z + 1).
double c_fn(double z);

// C0(rho) = sinh(rho) / rho, with C0 -> 1 as rho -> 0.
double C0(double rho);

int sign_of(double x, double zero_tol = kZeroStrength);

}  // namespace phasefront
