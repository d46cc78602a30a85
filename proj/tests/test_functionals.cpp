#include <doctest.h>

#include <cmath>

#include "phasefront/functionals.hpp"

using namespace phasefront;

namespace {

Front wave(FrontKind k, double eps, int gen = 1) {
  Front f;
  f.kind = k;
  f.strength = eps;
  f.generation = gen;
  return f;
}

Front composite(int index) {
  Front f;
  f.kind = FrontKind::Composite;
  f.interface_index = index;
  return f;
}

// L region | eta_0 | M region | zeta_0 | R region
std::vector<Front> layout(std::vector<Front> l, std::vector<Front> m, std::vector<Front> r) {
  std::vector<Front> out = std::move(l);
  out.push_back(composite(0));
  out.insert(out.end(), m.begin(), m.end());
  out.push_back(composite(1));
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace

TEST_CASE("regions") {
  const auto fr = layout({wave(FrontKind::Wave1, 0.1)}, {wave(FrontKind::Wave3, 0.1)},
                         {wave(FrontKind::Wave1, 0.1)});
  CHECK(regions_of(fr) == std::vector<int>{0, -1, 1, -1, 2});
}

TEST_CASE("L") {
  CHECK(eval_L({}, 2.0).total() == 0.0);
  const auto fr = layout({}, {wave(FrontKind::Wave1, -0.2)}, {});
  const RegionValues L = eval_L(fr, 2.0);
  CHECK(L.m == doctest::Approx(0.4));
  CHECK(L.l == 0.0);
  const auto fan = layout({}, {wave(FrontKind::Wave3, 0.25 / 3), wave(FrontKind::Wave3, 0.25 / 3),
                               wave(FrontKind::Wave3, 0.25 / 3)},
                          {});
  CHECK(eval_L(fan, 2.0).total() == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("bubble Q") {
  ParameterSet p;
  p.xi = 2.0;
  p.Keta_r = 2.0;
  p.Kzeta_r = 1.5;
  p.Keta_l = 3.0;
  p.Kzeta_l = 1.25;
  const auto any = layout({wave(FrontKind::Wave3, -0.1)}, {wave(FrontKind::Wave1, 0.1)},
                          {wave(FrontKind::Wave1, 0.1)});
  CHECK(eval_Q_bubble(any, p, 0.0, 0.0).total() == 0.0);

  const auto r = layout({}, {}, {wave(FrontKind::Wave1, 0.1)});
  CHECK(eval_Q_bubble(r, p, 0.5, 0.3).r == doctest::Approx((2.0 * 0.5 + 1.5 * 0.3) * 0.1));
  CHECK(eval_Q_bubble(r, p, 0.5, 0.3).r == doctest::Approx(0.145));

  const auto l = layout({wave(FrontKind::Wave3, -0.1)}, {}, {});
  CHECK(eval_Q_bubble(l, p, 0.5, 0.3).l == doctest::Approx(2.0 * 1.25 * 0.3 * 0.1));
  const auto lr = layout({wave(FrontKind::Wave3, 0.1)}, {}, {});
  CHECK(eval_Q_bubble(lr, p, 0.5, 0.3).l == doctest::Approx((3.0 * 0.5 + 1.25 * 0.3) * 0.1));
  // waves moving away from both interfaces carry no potential
  const auto away = layout({wave(FrontKind::Wave1, 0.1)}, {}, {wave(FrontKind::Wave3, -0.1)});
  CHECK(eval_Q_bubble(away, p, 0.5, 0.3).total() == 0.0);
}

TEST_CASE("increasing Q") {
  ParameterSet p;
  p.xi = 2.0;
  p.Keta_m = 2.0;
  p.Kzeta_m = 1.7;
  const auto any = layout({wave(FrontKind::Wave3, 0.1)}, {wave(FrontKind::Wave1, -0.1)}, {});
  CHECK(eval_Q_increasing(any, p, 0.0, 0.0).total() == 0.0);
  const auto shocks3 = layout({wave(FrontKind::Wave3, -0.1)}, {wave(FrontKind::Wave3, -0.2)},
                              {wave(FrontKind::Wave3, -0.3)});
  CHECK(eval_Q_increasing(shocks3, p, 0.4, 0.2).total() == 0.0);
  const auto m = layout({}, {wave(FrontKind::Wave1, -0.1)}, {});
  CHECK(eval_Q_increasing(m, p, 0.4, 0.2).m == doctest::Approx(2.0 * 2.0 * 0.4 * 0.1));
  CHECK(eval_Q_increasing(m, p, 0.4, 0.2).m == doctest::Approx(0.16));
}

TEST_CASE("snapshot bookkeeping") {
  ParameterSet p;
  p.xi = 1.5;
  auto fr = layout({wave(FrontKind::Wave3, 0.1, 1)}, {wave(FrontKind::Wave1, -0.2, 2)},
                   {wave(FrontKind::Wave1, 0.05, 3)});
  fr[1].composite.d01 = 0.01;
  fr[1].attached1[2] = 0.01;
  const FunctionalSnapshot s = evaluate(fr, CaseTag::Bubble, p, 0.3, 0.2);
  double sum = 0.0;
  for (const auto& [k, v] : s.F_k) sum += v;
  CHECK(sum == doctest::Approx(s.F).epsilon(1e-14));
  CHECK(s.L0 == doctest::Approx(0.01));
  CHECK(s.eta0_size == doctest::Approx(0.01));
  CHECK(s.bar_L == doctest::Approx(0.35));
  CHECK(s.max_shock == doctest::Approx(0.2));
  CHECK(s.tail(2) == doctest::Approx(s.F - s.F_k.at(1)));
}

TEST_CASE("delta F and the initial bound") {
  FunctionalSnapshot a, b;
  a.F = 1.0;
  b.F = 1.0 + 5e-11;
  CHECK(assert_delta_F(a, b).ok);
  b.F = 1.0 + 5e-10;
  CHECK_FALSE(assert_delta_F(a, b).ok);

  ParameterSet p;
  p.xi = 2.0;
  p.m0 = 1.0;
  const FunctionalSnapshot flat = evaluate(layout({}, {}, {}), CaseTag::Bubble, p, 0.1, 0.1);
  CHECK(flat.F == 0.0);
  CHECK(check_initial_bound(flat, p).ok());
}
