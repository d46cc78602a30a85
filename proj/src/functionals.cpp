#include "phasefront/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "phasefront/model.hpp"

namespace phasefront {

namespace {

double q_weight_bubble(const ParameterSet& p, double x, double y, Family f,
                       double eps, int region) {
  const double s = std::abs(eps);
  const bool shock = eps < 0.0;
  switch (region) {
    case 0:
      if (f != Family::Three) return 0.0;
      return shock ? p.xi * p.Kzeta_l * y * s : (p.Keta_l * x + p.Kzeta_l * y) * s;
    case 1: {
      const double w = shock ? p.xi : 1.0;
      return f == Family::One ? w * p.Keta_m * x * s : w * p.Kzeta_m * y * s;
    }
    default:
      if (f != Family::One) return 0.0;
      return shock ? p.xi * p.Keta_r * x * s : (p.Keta_r * x + p.Kzeta_r * y) * s;
  }
}

double q_weight_increasing(const ParameterSet& p, double x, double y, Family f,
                           double eps, int region) {
  const double s = std::abs(eps);
  const bool shock = eps < 0.0;
  switch (region) {
    case 0:
      if (f != Family::Three || shock) return 0.0;
      return (p.Keta_l * x + p.Kzeta_l * y) * s;
    case 1:
      if (f == Family::One) return (shock ? p.xi : 1.0) * p.Keta_m * x * s;
      return shock ? 0.0 : p.Kzeta_m * y * s;
    default:
      if (f != Family::One) return 0.0;
      return (shock ? p.xi : 1.0) * (p.Keta_r * x + p.Kzeta_r * y) * s;
  }
}

template <typename Weight>
RegionValues sum_over_waves(const std::vector<Front>& fronts, Weight weight) {
  RegionValues out;
  const std::vector<int> regions = regions_of(fronts);
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    const Front& fr = fronts[i];
    if (fr.is_composite()) continue;
    out.at(regions[i]) += weight(family_of(fr.kind), fr.strength, regions[i]);
  }
  return out;
}

}  // namespace

std::vector<int> regions_of(const std::vector<Front>& fronts) {
  std::vector<int> out(fronts.size(), 0);
  int seen = 0;
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    if (fronts[i].is_composite()) {
      out[i] = -1;
      ++seen;
    } else {
      out[i] = std::min(seen, 2);
    }
  }
  return out;
}

RegionValues eval_L(const std::vector<Front>& fronts, double xi) {
  return sum_over_waves(fronts, [&](Family, double eps, int) {
    return eps < 0.0 ? xi * -eps : eps;
  });
}

RegionValues eval_Q_bubble(const std::vector<Front>& fronts,
                           const ParameterSet& p, double x, double y) {
  return sum_over_waves(fronts, [&](Family f, double eps, int region) {
    return q_weight_bubble(p, x, y, f, eps, region);
  });
}

RegionValues eval_Q_increasing(const std::vector<Front>& fronts,
                               const ParameterSet& p, double x, double y) {
  return sum_over_waves(fronts, [&](Family f, double eps, int region) {
    return q_weight_increasing(p, x, y, f, eps, region);
  });
}

double wave_weight(CaseTag c, const ParameterSet& p, double x, double y,
                   Family family, double eps, int region) {
  const double l = eps < 0.0 ? p.xi * -eps : eps;
  const double q = c == CaseTag::Bubble
                       ? q_weight_bubble(p, x, y, family, eps, region)
                       : q_weight_increasing(p, x, y, family, eps, region);
  return l + q;
}

double FunctionalSnapshot::tail(int k) const {
  double s = 0.0;
  for (auto it = F_k.lower_bound(k); it != F_k.end(); ++it) s += it->second;
  return s;
}

FunctionalSnapshot evaluate(const std::vector<Front>& fronts, CaseTag c,
                            const ParameterSet& p, double x, double y,
                            double t) {
  FunctionalSnapshot s;
  s.t = t;
  s.L = eval_L(fronts, p.xi);
  s.Q = c == CaseTag::Bubble ? eval_Q_bubble(fronts, p, x, y)
                             : eval_Q_increasing(fronts, p, x, y);
  const std::vector<int> regions = regions_of(fronts);
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    const Front& fr = fronts[i];
    if (fr.is_composite()) {
      const double size = fr.composite.attached_size();
      s.L0 += size;
      (fr.interface_index == 0 ? s.eta0_size : s.zeta0_size) += size;
      for (const auto* m : {&fr.attached1, &fr.attached3}) {
        for (const auto& [order, v] : *m) s.F_k[order] += std::abs(v);
      }
      continue;
    }
    const double a = std::abs(fr.strength);
    s.bar_L += a;
    if (fr.strength < 0.0) s.max_shock = std::max(s.max_shock, a);
    s.F_k[fr.generation] +=
        wave_weight(c, p, x, y, family_of(fr.kind), fr.strength, regions[i]);
  }
  s.F = s.L.total() + s.L0 + s.Q.total();
  return s;
}

DeltaCheck assert_delta_F(const FunctionalSnapshot& before,
                          const FunctionalSnapshot& after) {
  DeltaCheck d;
  d.delta = after.F - before.F;
  d.tolerance = 1e-10 * std::max(1.0, before.F);
  d.ok = d.delta <= d.tolerance;
  return d;
}

InitialBound check_initial_bound(const FunctionalSnapshot& s0,
                                 const ParameterSet& p) {
  InitialBound b;
  b.F0 = s0.F;
  b.bound = p.xi * p.xi * s0.bar_L;
  b.F_ok = b.F0 <= b.bound * (1.0 + 1e-12) + 1e-15;
  b.cap_ok = s0.bar_L <= p.m0 * c_fn(p.m0) * (1.0 + 1e-12);
  return b;
}

}  // namespace phasefront
