#pragma once

// Admissibility thresholds, the domains D_b / D_c, parameter selection for
// the bubble and increasing-pressure cases, and the contraction factors.

#include <string>
#include <vector>

#include "phasefront/config.hpp"

namespace phasefront {

// K(r) = 2/(1+r) log(1 + (2/r)(1 + sqrt(1+r))), strictly decreasing.
double kcal(double r);

// 4/(4-xy) max{x(2+y)/(2-y), y(2+x)/(2-x)} for x = |eta|, y = |zeta|.
double h_bubble(double x, double y);

struct QuadRootsC {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
  double z1 = 0, z2 = 0, z3 = 0, z4 = 0;
  bool first_condition = false;   // b + xy sqrt(2-x) < 0
  bool second_condition = false;  // e^2 - 4df > 0
  double window_lo = 0;           // max{z1, z3}
  double window_hi = 0;           // min{z2, z4, 4/(xy) - 1}
  bool feasible = false;
};

QuadRootsC quad_roots_c(double x, double y);
bool in_domain_c(double x, double y);
// max{z1, z3}; throws OutsideDomain off D_c.
double h_increasing(double x, double y);

// H(|eta|, |zeta|) of the case; 0 for the trivial bubble.
double threshold_h(CaseTag c, double x, double y);

struct Admissibility {
  CaseTag tag = CaseTag::Bubble;
  double eta = 0, zeta = 0;
  double tv_log_p = 0, tv_u = 0;
  double lhs = 0;        // TV(log p) + TV(u)/min a
  double h = 0;          // H(|eta|, |zeta|), on the increasing side if mirrored
  double threshold = 0;  // K(H), +inf when eta = zeta = 0
  bool in_domain = true;
  bool admissible = false;
  std::string reason;

  double margin() const { return threshold - lhs; }
};

// Never throws for domain or threshold failures; they are reported.
Admissibility admissible(const PhaseConfig& cfg, const InitialData& data);

struct ParameterSet {
  double m0 = 1.0;
  double xi = 2.0;
  double Keta_l = 1.0, Kzeta_l = 1.0;
  double Keta_m = 1.0, Kzeta_m = 1.0;
  double Keta_r = 1.0, Kzeta_r = 1.0;
  double rho = 0.1;
  double sigma = 0.1;
};

// Selected from the bubble conditions with strict margins. Throws
// Infeasible when bar_L0 leaves no room for m0.
ParameterSet choose_parameters_bubble(double x, double y, double bar_L0);
// (x, y) must lie in D_c.
ParameterSet choose_parameters_increasing(double x, double y, double bar_L0);
// Dispatches on the tag; Decreasing uses the increasing chooser.
ParameterSet choose_parameters(CaseTag c, double x, double y, double bar_L0);

struct Condition {
  std::string name;
  double slack = 0;  // >= 0 when satisfied
  bool ok = true;
};

// Every inequality required of the parameter set, evaluated literally.
std::vector<Condition> check_parameters(CaseTag c, const ParameterSet& p,
                                        double x, double y, double bar_L0);
bool all_ok(const std::vector<Condition>& conds);

// Largest rho in {0.1 * 2^-k} satisfying the strict C0 conditions of the
// case for fixed remaining parameters.
double choose_rho(CaseTag c, const ParameterSet& p, double x, double y);
bool rho_conditions_hold(CaseTag c, const ParameterSet& p, double x, double y,
                         double rho);

// Generation contraction factor mu_b / mu_c at the given C0.
double mu_factor(CaseTag c, const ParameterSet& p, double x, double y,
                 double c0);
std::vector<double> mu_terms(CaseTag c, const ParameterSet& p, double x,
                             double y, double c0);

// w(m) = 2/(cosh m - 1), z(m) = 2 m c(m); K = z o w^-1.
double w_fn(double m);
double z_fn(double m);
double w_inverse(double r);  // bisection
// Largest relative gap |z(w^-1(r)) - K(r)| / K(r) over `samples` points
// log-spaced in [r_lo, r_hi].
double w_z_max_rel_error(double r_lo, double r_hi, int samples);

// Smallest m with m c(m) >= target (bisection on an increasing map).
double m_of_mc(double target);

}  // namespace phasefront
