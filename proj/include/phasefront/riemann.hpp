#pragma once

// Pre-Riemann solvers along Lax or integral curves, composite (stationary)
// waves carrying a phase contact, and the interaction rules used by the
// front-tracking engine.

#include "phasefront/model.hpp"

namespace phasefront {

// Outcome of a Riemann problem: a family-1 wave, a contact, a family-3 wave.
struct RiemannPattern {
  double eps1 = 0.0;
  double delta = 0.0;
  double eps3 = 0.0;
  Curve theta1 = Curve::Lax;
  Curve theta3 = Curve::Lax;
};

// Residuals of the three defining relations of a pattern joining two states:
// log-pressure balance, velocity balance (relative), contact strength.
struct PatternResiduals {
  double log_pressure = 0.0;
  double velocity = 0.0;
  double contact = 0.0;

  double max_abs() const;
};

PatternResiduals pattern_residuals(const State& left, const State& right,
                                   const RiemannPattern& pattern);

// Right state reached from `left` through the pattern's three waves.
State apply_pattern(const State& left, const RiemannPattern& pattern);

RiemannPattern solve_pre_riemann(const State& left, const State& right,
                                 Curve theta1, Curve theta3);

// Lax/Lax solver used at t = 0 and for interactions away from composites.
RiemannPattern solve_initial(const State& left, const State& right);

// Stationary wave bundling the contact with integral-curve strengths that
// were attached to it by the simplified solver.
struct CompositeWave {
  double d01 = 0.0;  // attached family-1 integral strength
  double d03 = 0.0;  // attached family-3 integral strength
  double a_minus = 1.0;
  double a_plus = 1.0;
  double position = 0.0;

  double delta() const { return contact_strength(a_minus, a_plus); }
  double attached_size() const;
};

// States across the composite: left -> I1(d01) -> contact -> I3(d03).
struct CompositeStates {
  State left;
  State after_d01;
  State after_contact;
  State right;
};

CompositeStates composite_states(const CompositeWave& cw, const State& left);

enum class Side { FromLeft, FromRight };

enum class CompositeSolver { Transparent, Accurate, Simplified };

const char* to_string(CompositeSolver s);

struct CompositeOutcome {
  CompositeSolver solver = CompositeSolver::Transparent;
  RiemannPattern pattern;  // as returned by the pre-Riemann solver
  double eps1 = 0.0;       // outgoing moving family-1 strength (0 if none)
  double eps3 = 0.0;       // outgoing moving family-3 strength (0 if none)
  double absorbed = 0.0;   // strength added to the composite
  Family absorbed_family = Family::One;
  CompositeWave updated;
};

// Resolve a family-1/3 wave hitting a composite. `u_minus`/`u_plus` are the
// outer states of the interaction (left of whichever front is leftmost,
// right of whichever is rightmost). Family 3 must arrive from the left and
// family 1 from the right.
CompositeOutcome interact_with_composite(const WaveStrength& incoming,
                                         Side side, const CompositeWave& cw,
                                         const State& u_minus,
                                         const State& u_plus, double rho);

// Post-hoc verification of a composite interaction: the two balance
// relations in terms of the incoming strength, the sign rules and the
// interaction estimate with its C0/2 refinement.
struct CompositeCheck {
  double log_pressure_residual = 0.0;
  double velocity_residual = 0.0;
  bool signs_ok = true;
  bool identity_ok = true;  // |eps_i - delta_i| == |eps_j|
  double reflected = 0.0;   // |eps_j|
  double bound = 0.0;       // estimate for |eps_j|
  bool estimate_ok = true;

  bool ok() const;
};

CompositeCheck check_composite_interaction(const WaveStrength& incoming,
                                           const CompositeWave& before,
                                           const CompositeOutcome& outcome,
                                           double rho);

// Two waves of the same family, `alpha` left of `beta`, starting from `left`.
RiemannPattern interact_same_family(const WaveStrength& alpha,
                                    const WaveStrength& beta,
                                    const State& left);

// A family-3 wave (left) crossing a family-1 wave (right): strengths are
// exchanged unchanged.
RiemannPattern interact_different_family(const WaveStrength& left_wave,
                                         const WaveStrength& right_wave,
                                         const State& left);

}  // namespace phasefront
