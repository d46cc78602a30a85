#pragma once

// Independent reference computations and random scenario builders shared by
// the unit tests and the acceptance harness. Nothing here calls the solvers
// under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "phasefront/config.hpp"
#include "phasefront/thresholds.hpp"
#include "phasefront/tracking.hpp"

namespace testsupport {

// Plain bisection for a sign change of f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Exact self-similar solution of the isothermal p-system with one sound
// coefficient `a`, written directly in terms of specific volume.
struct ExactRiemann {
  double a = 1.0;
  double vl = 1.0, ul = 0.0, vr = 1.0, ur = 0.0;
  double vm = 1.0, um = 0.0;

  // u on the backward curve through the left state, as a function of v.
  double u_back(double v) const {
    if (v >= vl) return ul + a * std::log(v / vl);
    return ul + a * (v - vl) / std::sqrt(v * vl);
  }
  // u of a middle state joined to the right state by a forward wave.
  double u_fwd(double v) const {
    if (vr <= v) return ur + a * std::log(vr / v);
    return ur + a * (vr - v) / std::sqrt(vr * v);
  }

  ExactRiemann(double a_, double vl_, double ul_, double vr_, double ur_)
      : a(a_), vl(vl_), ul(ul_), vr(vr_), ur(ur_) {
    auto g = [&](double lv) {
      const double v = std::exp(lv);
      return u_back(v) - u_fwd(v);
    };
    vm = std::exp(bisect(g, -40.0, 40.0, 300));
    um = u_back(vm);
  }

  // (v, u) at x / t = s.
  std::pair<double, double> at(double s) const {
    // backward wave
    if (vm < vl) {
      const double sh = -a / std::sqrt(vl * vm);
      if (s < sh) return {vl, ul};
    } else {
      const double head = -a / vl, tail = -a / vm;
      if (s < head) return {vl, ul};
      if (s < tail) {
        const double v = -a / s;
        return {v, ul + a * std::log(v / vl)};
      }
    }
    // forward wave
    if (vr > vm) {
      const double sh = a / std::sqrt(vr * vm);
      if (s < sh) return {vm, um};
      return {vr, ur};
    }
    const double tail = a / vm, head = a / vr;
    if (s < tail) return {vm, um};
    if (s < head) {
      const double v = a / s;
      return {v, ur + a * std::log(vr / v)};
    }
    return {vr, ur};
  }

  // Extent [lo, hi] in x / t of the non-constant part.
  std::pair<double, double> fan() const {
    const double lo = vm < vl ? -a / std::sqrt(vl * vm) : -a / vl;
    const double hi = vr > vm ? a / std::sqrt(vr * vm) : a / vr;
    return {lo, hi};
  }
};

// L1 distance in (v, u) between a tracked profile and the exact solution at
// time t over [x0, x1], by fine midpoint sampling.
inline double l1_error(const phasefront::Profile& p, const ExactRiemann& ex,
                       double x_center, double t, double x0, double x1,
                       int samples = 200000) {
  const double dx = (x1 - x0) / samples;
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = x0 + (i + 0.5) * dx;
    const auto c = phasefront::sample(p, x);
    const auto [v, u] = ex.at((x - x_center) / t);
    err += (std::abs(c.v - v) + std::abs(c.u - u)) * dx;
  }
  return err;
}

// Random piecewise-constant data with `n` pieces on [-span, span], shrunk
// until the configuration is admissible with the given margin factor.
inline phasefront::Scenario random_scenario(std::mt19937_64& rng,
                                            phasefront::CaseTag tag, int n,
                                            double T, double nu) {
  using namespace phasefront;
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Scenario sc;
  double x = 0.0, y = 0.0;
  if (tag == CaseTag::Bubble) {
    x = 0.05 + 0.5 * U(rng);
    y = 0.05 + 0.5 * U(rng);
  } else {
    do {
      x = 0.01 + 0.12 * U(rng);
      y = 0.01 + 0.12 * U(rng);
    } while (!in_domain_c(x, y));
  }
  const double eta = x;
  const double zeta = tag == CaseTag::Bubble ? -y : y;
  sc.phase.a_l = 0.8 + 0.6 * U(rng);
  sc.phase.a_m = sc.phase.a_l * (2.0 + eta) / (2.0 - eta);
  sc.phase.a_r = sc.phase.a_m * (2.0 + zeta) / (2.0 - zeta);
  sc.phase.x_a = -1.0 - U(rng);
  sc.phase.x_b = 1.0 + U(rng);

  const double span = 4.0;
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(-span + 2.0 * span * U(rng));
  std::sort(xs.begin(), xs.end());
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> dlv, du;
  for (int i = 0; i < n; ++i) {
    dlv.push_back(0.3 * N(rng));
    du.push_back(0.3 * N(rng));
  }
  const double v_base = 0.7 + 0.6 * U(rng);
  double scale = 1.0;
  for (int attempt = 0; attempt < 200; ++attempt) {
    sc.data.clear();
    for (int i = 0; i < n; ++i) {
      const double xi = i == 0 ? -span - 1.0 : xs[i];
      if (!sc.data.empty() && !(xi > sc.data.back().x)) continue;
      sc.data.push_back({xi, v_base * std::exp(scale * dlv[i]), scale * du[i]});
    }
    const Admissibility a = admissible(sc.phase, sc.data);
    if (a.in_domain && a.admissible && a.lhs < 0.6 * a.threshold) break;
    scale *= 0.8;
  }
  sc.T = T;
  sc.nu = nu;
  return sc;
}

}  // namespace testsupport
