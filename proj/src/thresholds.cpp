#include "phasefront/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "phasefront/error.hpp"
#include "phasefront/model.hpp"

namespace phasefront {

namespace {

constexpr double kVertexOffset = 1e-3;
constexpr double kRhoStart = 0.1;
constexpr int kMaxHalvings = 60;
constexpr double kSlackTol = 1e-12;

double mid(double lo, double hi) { return 0.5 * (lo + hi); }

// Roots of A z^2 + B z + C with A > 0, C > 0 and B < 0, computed without
// cancellation. Returns (smaller, larger).
std::pair<double, double> positive_roots(double A, double B, double C) {
  const double disc = B * B - 4.0 * A * C;
  const double q = 0.5 * (-B + std::sqrt(std::max(disc, 0.0)));
  const double r1 = C / q;
  const double r2 = q / A;
  return {std::min(r1, r2), std::max(r1, r2)};
}

Condition make(std::string name, double slack) {
  return {std::move(name), slack, slack >= -kSlackTol * std::max(1.0, std::abs(slack))};
}

// m0 between the total-variation requirement m c(m) >= bar_L0 and the
// phase requirement H < w(m).
double choose_m0(double H, double bar_L0) {
  if (!(bar_L0 >= 0.0) || !std::isfinite(bar_L0)) {
    throw Error(ErrorCode::InvalidArgument, "bar_L0 must be finite and non-negative");
  }
  const double m_lo = bar_L0 > 0.0 ? m_of_mc(bar_L0) : 0.0;
  if (H <= 0.0) return std::max(std::acosh(2.0), 2.0 * m_lo);
  const double m_hi = std::acosh(1.0 + 2.0 / H);
  if (!(m_lo < m_hi)) {
    throw Error(ErrorCode::Infeasible,
                "initial variation too large for the phase configuration: no m0 "
                "satisfies both m0 c(m0) >= bar_L0 and H < w(m0)");
  }
  return mid(m_lo, m_hi);
}

}  // namespace

double kcal(double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "kcal needs r > 0");
  return 2.0 / (1.0 + r) * std::log1p(2.0 / r * (1.0 + std::sqrt(1.0 + r)));
}

double h_bubble(double x, double y) {
  if (!(x >= 0.0 && x < 2.0 && y >= 0.0 && y < 2.0)) {
    throw Error(ErrorCode::OutsideDomain, "h_bubble needs (x, y) in [0, 2)^2");
  }
  const double lhs = x * (2.0 + y) / (2.0 - y);
  const double rhs = y * (2.0 + x) / (2.0 - x);
  return 4.0 / (4.0 - x * y) * std::max(lhs, rhs);
}

QuadRootsC quad_roots_c(double x, double y) {
  QuadRootsC q;
  if (!(x > 0.0 && x < 2.0 && y > 0.0 && y < 2.0)) return q;
  const double xy = x * y;
  q.a = xy * (2.0 - x) / 4.0;
  q.b = y * (x + 1.0) - (2.0 - x) * (1.0 - xy / 4.0);
  q.c = xy;
  q.d = xy / 4.0;
  q.e = xy * (4.0 - y) / 8.0 - 1.0;
  q.f = (1.0 + y / 2.0) * x + y * (1.0 - xy / 4.0);
  q.first_condition = q.b + xy * std::sqrt(2.0 - x) < 0.0;
  q.second_condition = q.e * q.e - 4.0 * q.d * q.f > 0.0;
  if (q.first_condition) {
    std::tie(q.z1, q.z2) = positive_roots(q.a, q.b, q.c);
  }
  if (q.second_condition && q.e < 0.0) {
    std::tie(q.z3, q.z4) = positive_roots(q.d, q.e, q.f);
  }
  if (q.first_condition && q.second_condition) {
    q.window_lo = std::max(q.z1, q.z3);
    q.window_hi = std::min({q.z2, q.z4, 4.0 / xy - 1.0});
    q.feasible = q.window_lo < q.window_hi;
  }
  return q;
}

bool in_domain_c(double x, double y) { return quad_roots_c(x, y).feasible; }

double h_increasing(double x, double y) {
  const QuadRootsC q = quad_roots_c(x, y);
  if (!q.feasible) {
    throw Error(ErrorCode::OutsideDomain,
                "(|eta|, |zeta|) = (" + std::to_string(x) + ", " + std::to_string(y) +
                    ") lies outside D_c");
  }
  return q.window_lo;
}

double threshold_h(CaseTag c, double x, double y) {
  if (c == CaseTag::Bubble) return h_bubble(x, y);
  return h_increasing(x, y);
}

Admissibility admissible(const PhaseConfig& cfg, const InitialData& data) {
  validate(cfg);
  validate(data);
  Admissibility r;
  r.eta = cfg.eta();
  r.zeta = cfg.zeta();

  // Sample every constant segment of (v0, u0, a).
  std::set<double> cuts{cfg.x_a, cfg.x_b};
  for (std::size_t i = 1; i < data.size(); ++i) cuts.insert(data[i].x);
  std::vector<double> probes;
  probes.push_back(*cuts.begin() - 1.0);
  for (double c : cuts) probes.push_back(c);

  auto piece_at = [&](double x) -> const DataPiece& {
    std::size_t k = 0;
    for (std::size_t i = 1; i < data.size(); ++i) {
      if (data[i].x <= x) k = i;
    }
    return data[k];
  };
  double prev_logp = 0.0, prev_u = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const DataPiece& p = piece_at(probes[i]);
    const double a = cfg.sound_at(probes[i]);
    const double logp = std::log(a * a / p.v);
    if (i > 0) {
      r.tv_log_p += std::abs(logp - prev_logp);
      r.tv_u += std::abs(p.u - prev_u);
    }
    prev_logp = logp;
    prev_u = p.u;
  }
  r.lhs = r.tv_log_p + r.tv_u / cfg.min_sound();

  try {
    r.tag = classify(cfg);
  } catch (const Error& e) {
    r.in_domain = false;
    r.reason = e.what();
    return r;
  }

  double x = std::abs(r.eta), y = std::abs(r.zeta);
  if (r.tag == CaseTag::Decreasing) std::swap(x, y);

  if (x == 0.0 && y == 0.0) {
    r.threshold = std::numeric_limits<double>::infinity();
    r.admissible = true;
    return r;
  }
  if (r.tag != CaseTag::Bubble && !in_domain_c(x, y)) {
    r.in_domain = false;
    r.reason = "(|eta|, |zeta|) lies outside D_c";
    return r;
  }
  r.h = threshold_h(r.tag, x, y);
  r.threshold = kcal(r.h);
  r.admissible = r.lhs < r.threshold;
  if (!r.admissible) {
    r.reason = "TV(log p0) + TV(u0)/min a = " + std::to_string(r.lhs) +
               " is not below K(H) = " + std::to_string(r.threshold);
  }
  return r;
}

double m_of_mc(double target) {
  if (!(target > 0.0)) return 0.0;
  auto g = [](double m) { return m * c_fn(m); };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw Error(ErrorCode::Infeasible, "m c(m) target unreachable");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double m = mid(lo, hi);
    (g(m) < target ? lo : hi) = m;
  }
  return hi;
}

ParameterSet choose_parameters_bubble(double x, double y, double bar_L0) {
  const double H = h_bubble(x, y);
  ParameterSet p;
  p.m0 = choose_m0(H, bar_L0);
  const double xi_hi = 1.0 / c_fn(p.m0);

  if (x == 0.0 && y == 0.0) {
    p.xi = 2.0 < xi_hi ? 2.0 : mid(1.0, xi_hi);
    p.rho = kRhoStart;
    return p;
  }

  p.xi = mid(1.0 + H, xi_hi);
  const double xi = p.xi;
  const double den = 1.0 - x * y / 4.0;
  const double v_eta = (1.0 + y / 2.0) / den;
  const double v_zeta = (1.0 + x / 2.0) / den;

  auto fits = [&](double k_eta, double k_zeta) {
    const bool eta_ok = x == 0.0 || k_eta * x / (1.0 - y / 2.0) < xi - 1.0;
    const bool zeta_ok = y == 0.0 || k_zeta * y / (1.0 - x / 2.0) < xi - 1.0;
    return eta_ok && zeta_ok;
  };
  double t = kVertexOffset;
  int halvings = 0;
  while (!fits(v_eta + t * (1.0 + y / 2.0), v_zeta + t * (1.0 + x / 2.0))) {
    t *= 0.5;
    if (++halvings > kMaxHalvings) {
      throw Error(ErrorCode::Infeasible, "no (Keta_m, Kzeta_m) near the cone vertex fits");
    }
  }
  p.Keta_m = v_eta + t * (1.0 + y / 2.0);
  p.Kzeta_m = v_zeta + t * (1.0 + x / 2.0);
  p.Keta_r = p.Keta_m;
  p.Kzeta_l = p.Kzeta_m;
  p.Kzeta_r = y > 0.0 ? mid((xi - 1.0) / 2.0, (xi - 1.0) / y - p.Keta_m * x / y)
                      : xi - 1.0;
  p.Keta_l = x > 0.0 ? mid((xi - 1.0) / 2.0, (xi - 1.0) / x - p.Kzeta_m * y / x)
                     : xi - 1.0;
  p.rho = choose_rho(CaseTag::Bubble, p, x, y);
  return p;
}

ParameterSet choose_parameters_increasing(double x, double y, double bar_L0) {
  const QuadRootsC q = quad_roots_c(x, y);
  if (!q.feasible) {
    throw Error(ErrorCode::OutsideDomain, "(|eta|, |zeta|) lies outside D_c");
  }
  const double H = q.window_lo;
  ParameterSet p;
  p.m0 = choose_m0(H, bar_L0);
  p.xi = mid(1.0 + H, std::min(1.0 + q.window_hi, 1.0 / c_fn(p.m0)));
  const double xi = p.xi;

  const double den = 1.0 - xi * x * y / 4.0;
  const double v_eta = (1.0 + (xi - 1.0) * y / 4.0) / den;
  const double v_zeta = ((xi - 1.0) + xi * x) / (2.0 * den);
  const double dir_eta = 1.0 + y / 2.0;
  const double dir_zeta = 1.0 + xi * x / 2.0;
  const double eta_cap =
      std::min((xi - 1.0 - y) / ((1.0 + y / 2.0) * x), (xi - 1.0) / x);
  const double zeta_cap = (xi - 1.0 - (xi - 1.0) * x / 2.0) / y;

  double t = kVertexOffset;
  int halvings = 0;
  while (!(v_eta + t * dir_eta < eta_cap && v_zeta + t * dir_zeta < zeta_cap)) {
    t *= 0.5;
    if (++halvings > kMaxHalvings) {
      throw Error(ErrorCode::Infeasible, "no (Keta_m, Kzeta_m) near the cone vertex fits");
    }
  }
  p.Keta_m = v_eta + t * dir_eta;
  p.Kzeta_m = v_zeta + t * dir_zeta;

  const double upper = (xi - 1.0) / (x + y);
  const double k_l = mid(((xi - 1.0) * x / 2.0 + p.Kzeta_m * y) / (x + y), upper);
  const double k_r = mid((p.Keta_m * (1.0 + y / 2.0) * x + y) / (x + y), upper);
  p.Keta_l = p.Kzeta_l = k_l;
  p.Keta_r = p.Kzeta_r = k_r;
  p.rho = choose_rho(CaseTag::Increasing, p, x, y);
  return p;
}

ParameterSet choose_parameters(CaseTag c, double x, double y, double bar_L0) {
  if (c == CaseTag::Bubble) return choose_parameters_bubble(x, y, bar_L0);
  return choose_parameters_increasing(x, y, bar_L0);
}

bool rho_conditions_hold(CaseTag c, const ParameterSet& p, double x, double y,
                         double rho) {
  const double c0 = C0(rho);
  const double xi = p.xi;
  if (c == CaseTag::Bubble) {
    return c0 < 2.0 * xi / (xi + 1.0) * std::min(p.Kzeta_m, p.Keta_m);
  }
  const double first = ((xi + 1.0) * c0 / 2.0 - xi * p.Kzeta_r) * y +
                       xi * (p.Keta_m * (1.0 + c0 * y / 2.0) - p.Keta_r) * x;
  const double second = (xi + 1.0) * c0 / 2.0 - xi * p.Keta_m;
  return first < 0.0 && second < 0.0;
}

double choose_rho(CaseTag c, const ParameterSet& p, double x, double y) {
  double rho = kRhoStart;
  for (int k = 0; k <= kMaxHalvings; ++k, rho *= 0.5) {
    if (rho_conditions_hold(c, p, x, y, rho)) return rho;
  }
  throw Error(ErrorCode::Infeasible, "no simplified-solver threshold rho satisfies the C0 conditions");
}

std::vector<Condition> check_parameters(CaseTag c, const ParameterSet& p,
                                        double x, double y, double bar_L0) {
  std::vector<Condition> out;
  const double xi = p.xi;
  const double c0 = C0(p.rho);
  const double cm = c_fn(p.m0);

  out.push_back(make("xi >= 1", xi - 1.0));
  out.push_back(make("xi <= 1/c(m0)", 1.0 / cm - xi));
  out.push_back(make("Kzeta_m |zeta| <= xi - 1", (xi - 1.0) - p.Kzeta_m * y));
  out.push_back(make("Keta_m |eta| <= xi - 1", (xi - 1.0) - p.Keta_m * x));
  out.push_back(make("Keta_r |eta| + Kzeta_r |zeta| <= xi - 1",
                     (xi - 1.0) - p.Keta_r * x - p.Kzeta_r * y));
  out.push_back(make("Keta_l |eta| + Kzeta_l |zeta| <= xi - 1",
                     (xi - 1.0) - p.Keta_l * x - p.Kzeta_l * y));
  out.push_back(make("bar_L0 <= m0 c(m0)", p.m0 * cm - bar_L0));

  if (c == CaseTag::Bubble) {
    const double H = h_bubble(x, y);
    out.push_back(make("1 + H_b <= xi", xi - 1.0 - H));
    // no phase jump: Q vanishes and the weights play no role
    if (x == 0.0 && y == 0.0) return out;
    out.push_back(make("Kzeta_m >= 1", p.Kzeta_m - 1.0));
    out.push_back(make("Keta_m >= 1", p.Keta_m - 1.0));
    out.push_back(make("Kzeta_r >= (xi - 1)/2", p.Kzeta_r - (xi - 1.0) / 2.0));
    out.push_back(make("Keta_l >= (xi - 1)/2", p.Keta_l - (xi - 1.0) / 2.0));
    out.push_back(make("Keta_r >= Keta_m", p.Keta_r - p.Keta_m));
    out.push_back(make("Kzeta_l >= Kzeta_m", p.Kzeta_l - p.Kzeta_m));
    out.push_back(make("1 + Keta_m |eta|/2 <= Kzeta_m",
                       p.Kzeta_m - 1.0 - p.Keta_m * x / 2.0));
    out.push_back(make("1 + Kzeta_m |zeta|/2 <= Keta_m",
                       p.Keta_m - 1.0 - p.Kzeta_m * y / 2.0));
    out.push_back(make("C0(rho) <= 2 xi/(xi + 1) min(Kzeta_m, Keta_m)",
                       2.0 * xi / (xi + 1.0) * std::min(p.Kzeta_m, p.Keta_m) - c0));
    return out;
  }

  const QuadRootsC q = quad_roots_c(x, y);
  out.push_back(make("(|eta|, |zeta|) in D_c", q.feasible ? 1.0 : -1.0));
  out.push_back(make("1 + H_c < xi", xi - 1.0 - q.window_lo));
  out.push_back(make("xi < 1 + min{z2, z4, 4/(|eta zeta|) - 1}", 1.0 + q.window_hi - xi));
  out.push_back(make("Keta_m >= 1", p.Keta_m - 1.0));
  out.push_back(make("Keta_m <= (xi - 1)/|eta|", (xi - 1.0) / x - p.Keta_m));
  out.push_back(make("((xi - 1)/2 - Keta_l)|eta| + (Kzeta_m - Kzeta_l)|zeta| <= 0",
                     -(((xi - 1.0) / 2.0 - p.Keta_l) * x + (p.Kzeta_m - p.Kzeta_l) * y)));
  out.push_back(make("(1 - Kzeta_r)|zeta| + (Keta_m (1 + |zeta|/2) - Keta_r)|eta| <= 0",
                     -((1.0 - p.Kzeta_r) * y +
                       (p.Keta_m * (1.0 + y / 2.0) - p.Keta_r) * x)));
  out.push_back(make("(xi - 1)/2 + Keta_m xi |eta|/2 <= Kzeta_m",
                     p.Kzeta_m - (xi - 1.0) / 2.0 - p.Keta_m * xi * x / 2.0));
  out.push_back(make("1 + Kzeta_m |zeta|/2 <= Keta_m",
                     p.Keta_m - 1.0 - p.Kzeta_m * y / 2.0));
  out.push_back(make("((xi + 1) C0/2 - xi Kzeta_r)|zeta| + xi (Keta_m (1 + C0 |zeta|/2) - Keta_r)|eta| <= 0",
                     -(((xi + 1.0) * c0 / 2.0 - xi * p.Kzeta_r) * y +
                       xi * (p.Keta_m * (1.0 + c0 * y / 2.0) - p.Keta_r) * x)));
  out.push_back(make("(xi + 1) C0/2 <= xi Keta_m", xi * p.Keta_m - (xi + 1.0) * c0 / 2.0));
  return out;
}

bool all_ok(const std::vector<Condition>& conds) {
  return std::all_of(conds.begin(), conds.end(), [](const Condition& c) { return c.ok; });
}

std::vector<double> mu_terms(CaseTag c, const ParameterSet& p, double x,
                             double y, double c0) {
  const double xi = p.xi;
  if (c == CaseTag::Bubble) {
    return {
        (1.0 + p.Kzeta_m * y) / (2.0 * p.Keta_m - 1.0),
        (1.0 + p.Keta_m * x) / (2.0 * p.Kzeta_m - 1.0),
        xi / (1.0 + 2.0 * p.Keta_l),
        xi / (1.0 + 2.0 * p.Kzeta_r),
        (1.0 + p.Keta_m * x) / xi,
        (1.0 + p.Kzeta_m * y) / xi,
        (1.0 + p.Keta_l * x + p.Kzeta_l * y) / xi,
        (1.0 + p.Keta_r * x + p.Kzeta_r * y) / xi,
        c0 / (xi * (2.0 * p.Keta_m - c0)),
        c0 / (xi * (2.0 * p.Kzeta_m - c0)),
    };
  }
  return {
      (1.0 + p.Kzeta_m * y) / (2.0 * p.Keta_m - 1.0),
      xi * (1.0 + p.Keta_m * x) / (1.0 + 2.0 * p.Kzeta_m),
      (1.0 + p.Keta_m * x) / xi,
      (1.0 + p.Keta_l * (x + y)) / xi,
      (1.0 + p.Keta_r * (x + y)) / xi,
      // produced / (decrease + produced) for a 1-wave reflected off eta_0
      (xi * x / 2.0) / ((p.Keta_l + 0.5) * x + (p.Kzeta_l - p.Kzeta_m) * y),
      (y / 2.0) / ((p.Kzeta_r - 0.5) * y + (p.Keta_r - p.Keta_m * (1.0 + y / 2.0)) * x),
      (c0 * y / 2.0) /
          (xi * (p.Kzeta_r - c0 / 2.0) * y +
           xi * (p.Keta_r - p.Keta_m * (1.0 + c0 * y / 2.0)) * x),
      c0 / (xi * (2.0 * p.Keta_m - c0)),
  };
}

double mu_factor(CaseTag c, const ParameterSet& p, double x, double y,
                 double c0) {
  const std::vector<double> t = mu_terms(c, p, x, y, c0);
  return *std::max_element(t.begin(), t.end());
}

double w_fn(double m) { return 2.0 / (std::cosh(m) - 1.0); }

double z_fn(double m) { return 2.0 * m * c_fn(m); }

double w_inverse(double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "w_inverse needs r > 0");
  double lo = 1e-8, hi = 1.0;
  while (w_fn(lo) < r) lo *= 0.5;
  while (w_fn(hi) > r) hi *= 2.0;
  for (int i = 0; i < 300 && hi - lo > 1e-16 * hi; ++i) {
    const double m = mid(lo, hi);
    (w_fn(m) > r ? lo : hi) = m;
  }
  return mid(lo, hi);
}

double w_z_max_rel_error(double r_lo, double r_hi, int samples) {
  double worst = 0.0;
  const double l0 = std::log(r_lo), l1 = std::log(r_hi);
  for (int i = 0; i < samples; ++i) {
    const double r =
        std::exp(samples == 1 ? l0 : l0 + (l1 - l0) * i / (samples - 1));
    const double k = kcal(r);
    worst = std::max(worst, std::abs(z_fn(w_inverse(r)) - k) / k);
  }
  return worst;
}

}  // namespace phasefront
