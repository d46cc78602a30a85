#pragma once

#include <map>

#include "phasefront/model.hpp"
#include "phasefront/riemann.hpp"

namespace phasefront {

enum class FrontKind { Wave1, Wave3, Composite };

inline Family family_of(FrontKind k) {
  return k == FrontKind::Wave1 ? Family::One
                               : (k == FrontKind::Wave3 ? Family::Three : Family::Two);
}

// A straight line x0 + speed (t - t0) in the (x, t) plane. Composites keep
// speed 0 and carry their attached strengths split by generation order;
// within one map all entries share one sign.
struct Front {
  long id = 0;
  FrontKind kind = FrontKind::Wave1;
  double x0 = 0.0;
  double t0 = 0.0;
  double speed = 0.0;
  double strength = 0.0;  // moving fronts only
  int generation = 1;     // moving fronts only

  CompositeWave composite;
  std::map<int, double> attached1;
  std::map<int, double> attached3;
  int interface_index = 0;  // 0 for x_a, 1 for x_b

  bool is_composite() const { return kind == FrontKind::Composite; }
  double position(double t) const { return x0 + speed * (t - t0); }
  WaveStrength wave() const { return {family_of(kind), strength}; }
};

}  // namespace phasefront
