#pragma once

// Glimm-type functionals on a front list: strength sums L (shocks weighted
// by xi), attached composite size L0, the case-dependent potential Q and
// F = L + L0 + Q, with a breakdown by generation order.

#include <map>
#include <string>
#include <vector>

#include "phasefront/config.hpp"
#include "phasefront/front.hpp"
#include "phasefront/thresholds.hpp"

namespace phasefront {

// Moving fronts are in region 0 (left of x_a), 1 (between) or 2 (right of
// x_b), counted by the composites to their left.
std::vector<int> regions_of(const std::vector<Front>& fronts);

struct RegionValues {
  double l = 0.0, m = 0.0, r = 0.0;
  double total() const { return l + m + r; }
  double& at(int region) { return region == 0 ? l : (region == 1 ? m : r); }
};

RegionValues eval_L(const std::vector<Front>& fronts, double xi);
// x = |eta|, y = |zeta|.
RegionValues eval_Q_bubble(const std::vector<Front>& fronts,
                           const ParameterSet& p, double x, double y);
RegionValues eval_Q_increasing(const std::vector<Front>& fronts,
                               const ParameterSet& p, double x, double y);

// Contribution of one moving wave to L + Q.
double wave_weight(CaseTag c, const ParameterSet& p, double x, double y,
                   Family family, double eps, int region);

struct FunctionalSnapshot {
  double t = 0.0;
  RegionValues L, Q;
  double L0 = 0.0;
  double F = 0.0;
  double bar_L = 0.0;      // sum of |moving strengths|
  double max_shock = 0.0;  // largest |shock strength|
  double eta0_size = 0.0;
  double zeta0_size = 0.0;
  std::map<int, double> F_k;

  // sum_{j >= k} F_j
  double tail(int k) const;
};

FunctionalSnapshot evaluate(const std::vector<Front>& fronts, CaseTag c,
                            const ParameterSet& p, double x, double y,
                            double t = 0.0);

struct DeltaCheck {
  double delta = 0.0;
  double tolerance = 0.0;
  bool ok = true;
};

// after.F - before.F <= 1e-10 max(1, before.F)
DeltaCheck assert_delta_F(const FunctionalSnapshot& before,
                          const FunctionalSnapshot& after);

struct InitialBound {
  double F0 = 0.0;
  double bound = 0.0;  // xi^2 bar_L(0)
  bool F_ok = true;
  bool cap_ok = true;  // bar_L(0) <= m0 c(m0)
  bool ok() const { return F_ok && cap_ok; }
};

InitialBound check_initial_bound(const FunctionalSnapshot& s0,
                                 const ParameterSet& p);

}  // namespace phasefront
