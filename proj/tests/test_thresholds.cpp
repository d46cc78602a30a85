#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "phasefront/error.hpp"
#include "phasefront/model.hpp"
#include "phasefront/thresholds.hpp"

using namespace phasefront;

TEST_CASE("kcal") {
  const double expected = 2.0 / 3.0 * std::log(2.0 + std::sqrt(3.0));
  CHECK(expected == doctest::Approx(0.877972).epsilon(1e-6));
  CHECK(std::abs(kcal(2.0) - expected) < 1e-12);
  CHECK(kcal(1e-8) > 10.0);
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 1000; ++i) {
    const double k = kcal(0.1 * i);
    CHECK(k < prev);
    prev = k;
  }
  CHECK_THROWS_AS(kcal(0.0), Error);
}

TEST_CASE("h_bubble") {
  for (double x : {0.0, 0.3, 1.1, 1.99}) CHECK(h_bubble(x, 0.0) == doctest::Approx(x).epsilon(1e-15));
  const double oracle = (4.0 / 3.25) * std::max(0.5 * 3.5 / 0.5, 1.5 * 2.5 / 1.5);
  CHECK(oracle == doctest::Approx(4.3077).epsilon(1e-4));
  CHECK(h_bubble(0.5, 1.5) == doctest::Approx(oracle).epsilon(1e-15));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 1.99);
  for (int i = 0; i < 1000; ++i) {
    const double x = U(rng), y = U(rng);
    CHECK(h_bubble(x, y) == doctest::Approx(h_bubble(y, x)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(h_bubble(2.0, 0.1), Error);
}

TEST_CASE("quadratic roots of the increasing case") {
  const QuadRootsC q = quad_roots_c(0.1, 0.1);
  REQUIRE(q.feasible);
  auto P = [&](double z) { return q.a * z * z + q.b * z + q.c; };
  auto R = [&](double z) { return q.d * z * z + q.e * z + q.f; };
  for (double z : {q.z1, q.z2}) CHECK(std::abs(P(z)) <= 1e-10 * std::max(1.0, q.a * z * z));
  for (double z : {q.z3, q.z4}) CHECK(std::abs(R(z)) <= 1e-10 * std::max(1.0, q.d * z * z));

  const double x = 1.9, y = 1.9;
  const double b = y * (x + 1) - (2 - x) * (1 - x * y / 4);
  CHECK(b > 0.0);
  CHECK_FALSE(quad_roots_c(x, y).feasible);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.001, 1.999);
  int infeasible = 0;
  for (int i = 0; i < 5000; ++i) {
    const QuadRootsC s = quad_roots_c(U(rng), U(rng));
    if (s.first_condition) {
      CHECK(s.z1 > 0.0);
      CHECK(s.z2 > 0.0);
    }
    if (s.feasible) CHECK(s.window_hi > s.window_lo);
    if (!s.feasible) ++infeasible;
  }
  CHECK(infeasible > 0);
  CHECK(in_domain_c(0.05, 0.05));
  CHECK(h_increasing(0.05, 0.05) > 0.0);
  CHECK_THROWS_AS(h_increasing(1.9, 1.9), Error);
}

TEST_CASE("admissibility") {
  PhaseConfig cfg{1.0, 1.2, 1.0, -1.0, 1.0};
  const InitialData flat{{0.0, 1.0, 0.0}};
  Admissibility a = admissible(cfg, flat);
  CHECK(a.tag == CaseTag::Bubble);
  CHECK(a.admissible);
  CHECK(a.tv_u == 0.0);
  // the only jumps of log p come from the two contacts
  CHECK(a.tv_log_p == doctest::Approx(4.0 * std::log(1.2)));

  PhaseConfig plain{1.0, 1.0, 1.0, -1.0, 1.0};
  const InitialData wild{{0.0, 1.0, 0.0}, {1.0, 100.0, 50.0}, {2.0, 0.01, -50.0}};
  a = admissible(plain, wild);
  CHECK(a.admissible);
  CHECK(std::isinf(a.threshold));

  PhaseConfig mixed{1.0, 1.2, 1.0, -1.0, 1.0};
  mixed.a_r = 0.5;  // eta > 0, zeta < 0: bubble
  CHECK(admissible(mixed, flat).tag == CaseTag::Bubble);
  PhaseConfig bad{1.0, 0.8, 1.5, -1.0, 1.0};  // eta < 0 < zeta
  a = admissible(bad, flat);
  CHECK_FALSE(a.in_domain);
  CHECK_FALSE(a.admissible);
}

TEST_CASE("sub-level sets are admissible below the threshold") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double h = 0.8;
  for (int i = 0; i < 200; ++i) {
    const double x = 1.5 * U(rng), y = 1.5 * U(rng);
    if (h_bubble(x, y) >= h) continue;
    PhaseConfig cfg;
    cfg.a_l = 1.0;
    cfg.a_m = sound_after_contact(1.0, x);
    cfg.a_r = sound_after_contact(cfg.a_m, -y);
    const Admissibility a = admissible(cfg, {{0.0, 1.0, 0.0}});
    if (a.lhs < kcal(h)) CHECK(a.admissible);
  }
}

TEST_CASE("bubble chooser") {
  ParameterSet p = choose_parameters_bubble(0.0, 0.0, 0.0);
  CHECK(p.xi == 2.0);
  CHECK(p.Keta_m == 1.0);
  CHECK(p.rho == 0.1);
  CHECK(all_ok(check_parameters(CaseTag::Bubble, p, 0.0, 0.0, 0.0)));

  const double H = h_bubble(0.5, 0.5);
  CHECK(H == doctest::Approx(4.0 / 3.75 * (0.5 * 2.5 / 1.5)).epsilon(1e-14));
  CHECK(H == doctest::Approx(0.8889).epsilon(1e-4));
  p = choose_parameters_bubble(0.5, 0.5, 0.0);
  CHECK(p.xi > 1.0 + H);
  CHECK(p.xi < 1.0 / c_fn(p.m0));
  CHECK(p.xi == doctest::Approx(0.5 * (1.0 + H + 1.0 / c_fn(p.m0))));
  // c(m0) < 1/(1 + H) is m0 < arccosh((2 + H)/H)
  CHECK(p.m0 < std::acosh((2.0 + H) / H));
  CHECK(std::acosh((2.0 + H) / H) == doctest::Approx(1.8473).epsilon(1e-4));
  for (const Condition& c : check_parameters(CaseTag::Bubble, p, 0.5, 0.5, 0.0)) {
    INFO(c.name);
    CHECK(c.ok);
  }
  CHECK(mu_factor(CaseTag::Bubble, p, 0.5, 0.5, C0(p.rho)) < 1.0);

  p = choose_parameters_bubble(0.5, 1.5, 0.01);
  CHECK(all_ok(check_parameters(CaseTag::Bubble, p, 0.5, 1.5, 0.01)));
  CHECK_THROWS_AS(choose_parameters_bubble(1.5, 1.5, 5.0), Error);
}

TEST_CASE("increasing chooser") {
  const ParameterSet p = choose_parameters_increasing(0.05, 0.05, 0.1);
  for (const Condition& c : check_parameters(CaseTag::Increasing, p, 0.05, 0.05, 0.1)) {
    INFO(c.name);
    CHECK(c.ok);
  }
  CHECK(mu_factor(CaseTag::Increasing, p, 0.05, 0.05, C0(p.rho)) < 1.0);
  CHECK_THROWS_AS(choose_parameters_increasing(1.9, 1.9, 0.0), Error);

  // with rho -> 0 the C0 conditions reduce to those at C0 = 1
  ParameterSet q = p;
  CHECK(rho_conditions_hold(CaseTag::Increasing, q, 0.05, 0.05, 1e-8));
}

TEST_CASE("mu") {
  const ParameterSet p = choose_parameters_bubble(0.3, 0.4, 0.0);
  const double c0 = C0(p.rho);
  const auto t = mu_terms(CaseTag::Bubble, p, 0.3, 0.4, c0);
  double m = 0.0;
  for (auto it = t.rbegin(); it != t.rend(); ++it) m = std::max(m, *it);
  CHECK(m == mu_factor(CaseTag::Bubble, p, 0.3, 0.4, c0));

  ParameterSet big = p;
  big.Keta_m = big.Kzeta_m = big.Keta_l = big.Kzeta_r = 1e12;
  const auto tb = mu_terms(CaseTag::Bubble, big, 0.3, 0.4, c0);
  for (int i : {2, 3, 8, 9}) CHECK(tb[i] < 1e-6);
  // K on both sides of the fraction: the reflected share tends to half the jump
  CHECK(tb[0] == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(tb[1] == doctest::Approx(0.15).epsilon(1e-9));
}

TEST_CASE("printed reflection term of the increasing case can exceed one") {
  // With (K eta_l - 1/2) in the denominator the term is not a contraction
  // factor on part of D_c; the implemented (K eta_l + 1/2) form stays below 1.
  int printed_ge_one = 0, sampled = 0;
  for (int i = 1; i < 60; ++i) {
    for (int j = 1; j < 60; ++j) {
      const double x = i * 0.01, y = j * 0.01;
      if (!in_domain_c(x, y)) continue;
      const ParameterSet p = choose_parameters_increasing(x, y, 0.0);
      ++sampled;
      const double printed = (p.xi * x / 2.0) /
                             ((p.Keta_l - 0.5) * x + (p.Kzeta_l - p.Kzeta_m) * y);
      if (!(printed < 1.0) || printed < 0.0) ++printed_ge_one;
      CHECK(mu_terms(CaseTag::Increasing, p, x, y, C0(p.rho))[5] < 1.0);
    }
  }
  CHECK(sampled > 0);
  CHECK(printed_ge_one > 0);
}

TEST_CASE("w and z") {
  const double m = std::acosh(2.0);
  CHECK(w_fn(m) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(w_inverse(2.0) == doctest::Approx(m).epsilon(1e-13));
  CHECK(2.0 * m * c_fn(m) == doctest::Approx(kcal(2.0)).epsilon(1e-13));
  double pw = std::numeric_limits<double>::infinity(), pz = -1.0;
  for (int i = 1; i <= 500; ++i) {
    const double mm = 0.02 * i;
    CHECK(w_fn(mm) < pw);
    CHECK(z_fn(mm) > pz);
    CHECK(kcal(w_fn(mm)) == doctest::Approx(z_fn(mm)).epsilon(1e-10));
    pw = w_fn(mm);
    pz = z_fn(mm);
  }
  CHECK(w_z_max_rel_error(0.01, 50.0, 200) < 1e-9);
  CHECK(m_of_mc(0.3) * c_fn(m_of_mc(0.3)) == doctest::Approx(0.3).epsilon(1e-12));
}
