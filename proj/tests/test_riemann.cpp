#include <doctest.h>

#include <cmath>
#include <random>

#include "phasefront/error.hpp"
#include "phasefront/riemann.hpp"
#include "support.hpp"

using namespace phasefront;

TEST_CASE("pre-Riemann solver: identical states") {
  const State s{1.3, 0.2, 1.1};
  const RiemannPattern p = solve_initial(s, s);
  CHECK(p.eps1 == 0.0);
  CHECK(p.delta == 0.0);
  CHECK(p.eps3 == 0.0);
}

TEST_CASE("pre-Riemann solver: two rarefactions") {
  const State l{1.0, 0.0, 1.0};
  const State r{1.0, 4.0, 1.0};
  for (Curve t1 : {Curve::Lax, Curve::Integral}) {
    for (Curve t3 : {Curve::Lax, Curve::Integral}) {
      const RiemannPattern p = solve_pre_riemann(l, r, t1, t3);
      CHECK(p.eps1 == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(p.eps3 == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(p.delta == 0.0);
    }
  }
}

TEST_CASE("pre-Riemann solver: shock and rarefaction") {
  // root of sinh(e) + e + 1 = 0 by plain bisection
  const double oracle = testsupport::bisect([](double e) { return std::sinh(e) + e + 1.0; }, -2.0, 0.0);
  CHECK(oracle == doctest::Approx(-0.489).epsilon(1e-3));

  const State l{1.0, 0.0, 1.0};
  const State r{std::exp(-2.0), 0.0, 1.0};  // p+ = p- e^2
  const RiemannPattern p = solve_initial(l, r);
  CHECK(p.eps1 == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(p.eps3 == doctest::Approx(oracle + 1.0).epsilon(1e-12));
  CHECK(p.eps1 < 0.0);
  CHECK(p.eps3 > 0.0);
  CHECK(pattern_residuals(l, r, p).max_abs() < 1e-13);
}

TEST_CASE("pre-Riemann solver: pure contact") {
  const State l{1.0, 0.5, 1.0};
  const State r{9.0, 0.5, 3.0};
  const RiemannPattern p = solve_initial(l, r);
  CHECK(std::abs(p.eps1) < 1e-14);
  CHECK(p.delta == doctest::Approx(1.0));
  CHECK(std::abs(p.eps3) < 1e-14);
}

TEST_CASE("pre-Riemann solver: random states reproduce the right state") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const State l{0.3 + 2.0 * U(rng), 2.0 * U(rng) - 1.0, 0.5 + U(rng)};
    const State r{0.3 + 2.0 * U(rng), 2.0 * U(rng) - 1.0, 0.5 + U(rng)};
    const Curve t1 = U(rng) < 0.5 ? Curve::Lax : Curve::Integral;
    const Curve t3 = U(rng) < 0.5 ? Curve::Lax : Curve::Integral;
    const RiemannPattern p = solve_pre_riemann(l, r, t1, t3);
    CHECK(pattern_residuals(l, r, p).max_abs() < 1e-11);
    const State back = apply_pattern(l, p);
    CHECK(back.v == doctest::Approx(r.v).epsilon(1e-11));
    CHECK(back.u == doctest::Approx(r.u).epsilon(1e-11));
    CHECK(back.a == doctest::Approx(r.a).epsilon(1e-14));
  }
}

TEST_CASE("composite: zero incoming wave") {
  CompositeWave cw;
  cw.a_minus = 1.0;
  cw.a_plus = 1.4;
  cw.d01 = 0.01;
  const State um{1.0, 0.0, 1.0};
  const State up = composite_states(cw, um).right;
  const CompositeOutcome o = interact_with_composite({Family::Three, 0.0}, Side::FromLeft, cw, um, up, 0.1);
  CHECK(o.solver == CompositeSolver::Transparent);
  CHECK(o.eps1 == 0.0);
  CHECK(o.eps3 == 0.0);
  CHECK(o.updated.d01 == cw.d01);
  CHECK(o.updated.d03 == cw.d03);
}

TEST_CASE("composite: no contact transmits unchanged") {
  CompositeWave cw;
  const State um{1.0, 0.0, 1.0};
  const State up = apply_wave(um, {Family::One, 0.2});
  const CompositeOutcome o = interact_with_composite({Family::One, 0.2}, Side::FromRight, cw, um, up, 0.1);
  CHECK(o.eps1 == 0.2);
  CHECK(o.eps3 == 0.0);
  CHECK(o.absorbed == 0.0);
}

TEST_CASE("composite: wrong side is rejected") {
  CompositeWave cw;
  const State s{1.0, 0.0, 1.0};
  CHECK_THROWS_AS(interact_with_composite({Family::One, 0.1}, Side::FromLeft, cw, s, s, 0.1), Error);
  CHECK_THROWS_AS(interact_with_composite({Family::Three, 0.1}, Side::FromRight, cw, s, s, 0.1), Error);
  CHECK_THROWS_AS(interact_with_composite({Family::Three, 0.1}, Side::FromLeft, cw, s, s, 0.0), Error);
}

TEST_CASE("composite: simplified solver attaches the reflected strength") {
  CompositeWave cw;
  cw.a_minus = 1.0;
  cw.a_plus = 1.5;
  const State um{1.0, 0.0, 1.0};
  const State right_of_cw = composite_states(cw, um).right;
  const State up = apply_wave(right_of_cw, {Family::One, 0.05});
  const CompositeOutcome o = interact_with_composite({Family::One, 0.05}, Side::FromRight, cw, um, up, 0.1);
  CHECK(o.solver == CompositeSolver::Simplified);
  CHECK(o.eps3 == 0.0);
  CHECK(o.absorbed != 0.0);
  CHECK(o.updated.d03 == doctest::Approx(o.absorbed));
  CHECK(o.updated.d01 == 0.0);
  // the new composite reproduces the outer states
  const State lhs = apply_wave(um, {Family::One, o.eps1});
  const State out = composite_states(o.updated, lhs).right;
  CHECK(out.v == doctest::Approx(up.v).epsilon(1e-12));
  CHECK(out.u == doctest::Approx(up.u).epsilon(1e-12));
  CHECK(check_composite_interaction({Family::One, 0.05}, cw, o, 0.1).ok());
}

TEST_CASE("composite: random interactions satisfy the estimates") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int n = 0; n < 10000; ++n) {
    CompositeWave cw;
    cw.a_minus = 0.5 + U(rng);
    cw.a_plus = 0.5 + U(rng);
    cw.d01 = 0.1 * (U(rng) - 0.5);
    cw.d03 = 0.1 * (U(rng) - 0.5);
    const double rho = 0.01 + 0.3 * U(rng);
    const double d = (2.0 * U(rng) - 1.0) * (U(rng) < 0.5 ? rho : 1.0);
    const State base{0.5 + U(rng), U(rng) - 0.5, cw.a_minus};
    const bool from_right = U(rng) < 0.5;
    CompositeOutcome o;
    WaveStrength in;
    if (from_right) {
      in = {Family::One, d};
      const State up = apply_wave(composite_states(cw, base).right, in);
      o = interact_with_composite(in, Side::FromRight, cw, base, up, rho);
    } else {
      in = {Family::Three, d};
      State um = base;
      um.a = cw.a_minus;
      const State left_of_cw = apply_wave(um, in);
      const State up = composite_states(cw, left_of_cw).right;
      o = interact_with_composite(in, Side::FromLeft, cw, um, up, rho);
    }
    const CompositeCheck c = check_composite_interaction(in, cw, o, rho);
    INFO("draw " << n);
    CHECK(c.ok());
  }
}

TEST_CASE("same family: zero partner") {
  const State l{1.0, 0.0, 1.0};
  const RiemannPattern p = interact_same_family({Family::Three, -0.3}, {Family::Three, 0.0}, l);
  CHECK(p.eps3 == -0.3);
  CHECK(p.eps1 == 0.0);
}

TEST_CASE("same family: two shocks") {
  const State l{1.0, 0.0, 1.0};
  const RiemannPattern p = interact_same_family({Family::Three, -0.5}, {Family::Three, -0.5}, l);
  CHECK(p.eps3 < -0.5);
  CHECK(p.eps1 > 0.0);
}

TEST_CASE("same family: shock meets rarefaction") {
  const double bound = c_fn(0.4) * 0.3;
  CHECK(c_fn(0.4) == doctest::Approx(0.03947).epsilon(1e-3));
  CHECK(bound == doctest::Approx(0.0118).epsilon(1e-2));
  const State l{1.0, 0.0, 1.0};
  const RiemannPattern p = interact_same_family({Family::Three, -0.4}, {Family::Three, 0.3}, l);
  CHECK(std::abs(p.eps1) <= bound);
  CHECK(p.eps1 <= 0.0);
}

TEST_CASE("different families cross unchanged") {
  const State l{1.2, 0.1, 0.9};
  const WaveStrength a{Family::Three, -0.2}, b{Family::One, 0.15};
  const RiemannPattern p = interact_different_family(a, b, l);
  CHECK(p.eps1 == 0.15);
  CHECK(p.eps3 == -0.2);
  const State r = apply_wave(apply_wave(l, a), b);
  CHECK(pattern_residuals(l, r, p).max_abs() <= 1e-11);
  const RiemannPattern z = interact_different_family(a, {Family::One, 0.0}, l);
  CHECK(z.eps3 == -0.2);
  CHECK(z.eps1 == 0.0);
  CHECK_THROWS_AS(interact_different_family(b, a, l), Error);
}
