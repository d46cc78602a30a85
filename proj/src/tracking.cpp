#include "phasefront/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "phasefront/error.hpp"
#include "phasefront/logging.hpp"
#include "phasefront/riemann.hpp"

namespace phasefront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

WaveRecord record_of(const Front& f) {
  return {f.kind == FrontKind::Wave1 ? 1 : 3, f.strength, f.generation};
}

std::string describe(const EventRecord& e) {
  std::ostringstream os;
  os.precision(17);
  os << "event " << e.index << " (" << e.kind;
  if (!e.solver.empty()) os << "/" << e.solver;
  os << ") at t=" << e.t << ", x=" << e.x << "; in:";
  for (const auto& w : e.incoming) os << " " << w.family << ":" << w.strength << "[g" << w.generation << "]";
  os << "; out:";
  for (const auto& w : e.outgoing) os << " " << w.family << ":" << w.strength << "[g" << w.generation << "]";
  if (e.absorbed_family != 0) os << "; absorbed " << e.absorbed_family << ":" << e.absorbed;
  return os.str();
}

double log_p(const State& s) { return std::log(s.pressure()); }

}  // namespace

void attach_strength(std::map<int, double>& attached, double s, int order) {
  if (s == 0.0) return;
  const double total = attached_total(attached);
  if (total == 0.0 || (total > 0.0) == (s > 0.0)) {
    attached[order] += s;
    return;
  }
  double remaining = s;
  while (remaining != 0.0 && !attached.empty()) {
    auto it = std::prev(attached.end());
    if (std::abs(remaining) >= std::abs(it->second)) {
      remaining += it->second;
      attached.erase(it);
    } else {
      it->second += remaining;
      remaining = 0.0;
    }
  }
  if (remaining != 0.0) attached[order] += remaining;
}

double attached_total(const std::map<int, double>& attached) {
  double s = 0.0;
  for (const auto& [k, v] : attached) s += v;
  return s;
}

Tracker::Tracker(EngineSetup setup, const InitialData& data)
    : setup_(std::move(setup)) {
  validate(setup_.phase);
  validate(data);
  if (!(setup_.params.sigma > 0.0) || !(setup_.params.rho > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sigma and rho must be positive");
  }
  approximate_initial(data);
  refresh();
  snapshot_ = evaluate(fronts_, setup_.tag, setup_.params, setup_.x, setup_.y, 0.0);
  initial_ = snapshot_;
  max_shock_seen_ = snapshot_.max_shock;
  const InitialBound b = check_initial_bound(initial_, setup_.params);
  if (!b.F_ok) {
    flag(-1, "initial_bound", "F(0) = " + std::to_string(b.F0) +
                                  " exceeds xi^2 bar_L(0) = " + std::to_string(b.bound));
  }
  if (!b.cap_ok) {
    flag(-1, "initial_bound", "bar_L(0) = " + std::to_string(initial_.bar_L) +
                                  " exceeds m0 c(m0)");
  }
  monitor(-1, snapshot_);
}

Front Tracker::make_front(FrontKind kind, double x) {
  Front f;
  f.id = next_id_++;
  f.kind = kind;
  f.x0 = x;
  f.t0 = t_;
  return f;
}

void Tracker::append_wave(std::vector<Front>& out, Family fam, double eps,
                          int generation, double x, bool split) {
  if (std::abs(eps) <= kZeroStrength) return;
  const FrontKind kind = fam == Family::One ? FrontKind::Wave1 : FrontKind::Wave3;
  long pieces = 1;
  if (split && eps > 0.0) {
    pieces = static_cast<long>(std::ceil(eps / setup_.params.sigma - 1e-9));
    pieces = std::max(1L, pieces);
  }
  for (long k = 0; k < pieces; ++k) {
    Front f = make_front(kind, x);
    f.strength = eps / static_cast<double>(pieces);
    f.generation = generation;
    created_[generation] += 1;
    out.push_back(std::move(f));
  }
}

void Tracker::approximate_initial(const InitialData& data) {
  const PhaseConfig& ph = setup_.phase;
  far_left_ = State{data[0].v, data[0].u, ph.a_l};

  std::set<double> cuts{ph.x_a, ph.x_b};
  for (std::size_t i = 1; i < data.size(); ++i) cuts.insert(data[i].x);

  auto piece_right_of = [&](double x) -> const DataPiece& {
    std::size_t k = 0;
    for (std::size_t i = 1; i < data.size(); ++i)
      if (data[i].x <= x) k = i;
    return data[k];
  };
  auto piece_left_of = [&](double x) -> const DataPiece& {
    std::size_t k = 0;
    for (std::size_t i = 1; i < data.size(); ++i)
      if (data[i].x < x) k = i;
    return data[k];
  };
  auto sound_left_of = [&](double x) {
    if (x <= ph.x_a) return ph.a_l;
    if (x <= ph.x_b) return ph.a_m;
    return ph.a_r;
  };

  for (double xc : cuts) {
    const DataPiece& pl = piece_left_of(xc);
    const DataPiece& pr = piece_right_of(xc);
    const State left{pl.v, pl.u, sound_left_of(xc)};
    const State right{pr.v, pr.u, ph.sound_at(xc)};
    const RiemannPattern pat = solve_initial(left, right);
    append_wave(fronts_, Family::One, pat.eps1, 1, xc, true);
    if (xc == ph.x_a || xc == ph.x_b) {
      Front c = make_front(FrontKind::Composite, xc);
      c.composite.a_minus = left.a;
      c.composite.a_plus = right.a;
      c.composite.position = xc;
      c.interface_index = xc == ph.x_a ? 0 : 1;
      fronts_.push_back(std::move(c));
    }
    append_wave(fronts_, Family::Three, pat.eps3, 1, xc, true);
  }
}

void Tracker::refresh() {
  states_.resize(fronts_.size() + 1);
  states_[0] = far_left_;
  for (std::size_t i = 0; i < fronts_.size(); ++i) {
    const Front& f = fronts_[i];
    if (f.is_composite()) {
      states_[i + 1] = composite_states(f.composite, states_[i]).right;
    } else {
      states_[i + 1] = apply_wave(states_[i], f.wave());
    }
  }
  for (std::size_t i = 0; i < fronts_.size(); ++i) {
    Front& f = fronts_[i];
    if (f.is_composite()) continue;
    const State& l = states_[i];
    const State& r = states_[i + 1];
    const Family fam = family_of(f.kind);
    double s;
    if (f.strength < 0.0) {
      s = rh_speed(l.a, l.v, r.v, fam);
    } else {
      s = fam == Family::One ? -r.a / r.v : r.a / r.v;
    }
    if (s != f.speed) {
      f.x0 = f.position(t_);
      f.t0 = t_;
      f.speed = s;
    }
  }
}

double Tracker::half_tv_log_p() const {
  double tv = 0.0;
  for (std::size_t i = 0; i < fronts_.size(); ++i) {
    const Front& f = fronts_[i];
    if (f.is_composite()) {
      const CompositeStates cs = composite_states(f.composite, states_[i]);
      tv += std::abs(log_p(cs.after_d01) - log_p(cs.left));
      tv += std::abs(log_p(cs.after_contact) - log_p(cs.after_d01));
      tv += std::abs(log_p(cs.right) - log_p(cs.after_contact));
    } else {
      tv += std::abs(log_p(states_[i + 1]) - log_p(states_[i]));
    }
  }
  return 0.5 * tv;
}

long Tracker::created_below(int k) const {
  long n = 0;
  for (const auto& [g, c] : created_)
    if (g < k) n += c;
  return n;
}

std::optional<Collision> Tracker::next_collision(double horizon) const {
  std::optional<Collision> best;
  for (std::size_t i = 0; i + 1 < fronts_.size(); ++i) {
    const Front& A = fronts_[i];
    const Front& B = fronts_[i + 1];
    if (A.is_composite() && B.is_composite()) continue;
    const double closing = A.speed - B.speed;
    if (!(closing > 0.0)) continue;
    const double pa = A.position(t_);
    const double pb = B.position(t_);
    const double dt = std::max(0.0, pb - pa) / closing;
    const double tc = t_ + dt;
    if (tc > horizon) continue;
    double xc;
    if (A.is_composite()) {
      xc = A.x0;
    } else if (B.is_composite()) {
      xc = B.x0;
    } else {
      xc = 0.5 * (A.position(tc) + B.position(tc));
    }
    const bool better =
        !best || tc < best->t ||
        (tc == best->t && (xc < best->x || (xc == best->x && A.id < best->left_id)));
    if (better) best = Collision{tc, xc, i, A.id};
  }
  return best;
}

EventRecord Tracker::resolve(const Collision& c) {
  if (c.left + 1 >= fronts_.size()) {
    throw Error(ErrorCode::InvalidArgument, "collision index out of range");
  }
  const FunctionalSnapshot before = snapshot_;
  const Front A = fronts_[c.left];
  const Front B = fronts_[c.left + 1];
  const State u_minus = states_[c.left];
  const State u_plus = states_[c.left + 2];
  t_ = c.t;

  EventRecord ev;
  ev.index = events_;
  ev.t = c.t;
  ev.x = c.x;
  ev.F_before = before.F;
  if (!A.is_composite()) ev.incoming.push_back(record_of(A));
  if (!B.is_composite()) ev.incoming.push_back(record_of(B));

  std::vector<Front> out;
  std::string estimate_failure;

  if (A.kind == FrontKind::Wave3 && B.kind == FrontKind::Wave1) {
    ev.kind = "crossing";
    const RiemannPattern pat = interact_different_family(A.wave(), B.wave(), u_minus);
    Front b = B, a = A;
    b.strength = pat.eps1;
    a.strength = pat.eps3;
    for (Front* f : {&b, &a}) {
      f->x0 = c.x;
      f->t0 = c.t;
    }
    out.push_back(b);
    out.push_back(a);
  } else if (!A.is_composite() && A.kind == B.kind) {
    ev.kind = "same_family";
    const Family fi = family_of(A.kind);
    const RiemannPattern pat = interact_same_family(A.wave(), B.wave(), u_minus);
    const int g_tr = std::min(A.generation, B.generation);
    const int g_rf = std::max(A.generation, B.generation) + 1;
    const double e_i = fi == Family::One ? pat.eps1 : pat.eps3;
    const double e_j = fi == Family::One ? pat.eps3 : pat.eps1;
    const double al = A.strength, be = B.strength;
    if (al < 0.0 && be < 0.0) {
      if (!(e_j >= -kZeroStrength) ||
          !(std::abs(e_i) > std::max(std::abs(al), std::abs(be)))) {
        estimate_failure = "two shocks: transmitted not stronger or reflected not a rarefaction";
      }
    } else if ((al < 0.0) != (be < 0.0)) {
      const double shock = al < 0.0 ? -al : -be;
      const double bound = c_fn(shock) * std::min(std::abs(al), std::abs(be));
      if (std::abs(e_j) > bound * (1.0 + 1e-9) + 1e-14 || e_j > kZeroStrength) {
        estimate_failure = "mixed signs: reflected wave exceeds c(shock) min";
      }
    }
    const int g1 = fi == Family::One ? g_tr : g_rf;
    const int g3 = fi == Family::Three ? g_tr : g_rf;
    append_wave(out, Family::One, pat.eps1, g1, c.x, fi != Family::One);
    append_wave(out, Family::Three, pat.eps3, g3, c.x, fi != Family::Three);
  } else {
    ev.kind = "composite";
    const bool from_left = B.is_composite();
    const Front& wave = from_left ? A : B;
    Front comp = from_left ? B : A;
    const Side side = from_left ? Side::FromLeft : Side::FromRight;
    const CompositeOutcome oc = interact_with_composite(
        wave.wave(), side, comp.composite, u_minus, u_plus, setup_.params.rho);
    ev.solver = to_string(oc.solver);
    const CompositeCheck chk =
        check_composite_interaction(wave.wave(), comp.composite, oc, setup_.params.rho);
    if (!chk.ok()) {
      std::ostringstream os;
      os.precision(17);
      os << "composite interaction check failed: log-p residual "
         << chk.log_pressure_residual << ", velocity residual " << chk.velocity_residual
         << ", signs " << chk.signs_ok << ", identity " << chk.identity_ok
         << ", reflected " << chk.reflected << " vs bound " << chk.bound;
      estimate_failure = os.str();
    }
    const int g = wave.generation;
    if (oc.solver == CompositeSolver::Simplified) {
      auto& target = oc.absorbed_family == Family::One ? comp.attached1 : comp.attached3;
      attach_strength(target, oc.absorbed, g + 1);
      comp.composite.d01 = attached_total(comp.attached1);
      comp.composite.d03 = attached_total(comp.attached3);
      ev.absorbed_family = oc.absorbed_family == Family::One ? 1 : 3;
      ev.absorbed = oc.absorbed;
    }
    const bool incoming_one = wave.kind == FrontKind::Wave1;
    append_wave(out, Family::One, oc.eps1, incoming_one ? g : g + 1, c.x, !incoming_one);
    out.push_back(comp);
    append_wave(out, Family::Three, oc.eps3, incoming_one ? g + 1 : g, c.x, incoming_one);
  }

  for (const Front& f : out)
    if (!f.is_composite()) ev.outgoing.push_back(record_of(f));

  fronts_.erase(fronts_.begin() + static_cast<long>(c.left),
                fronts_.begin() + static_cast<long>(c.left) + 2);
  fronts_.insert(fronts_.begin() + static_cast<long>(c.left), out.begin(), out.end());
  refresh();
  snapshot_ = evaluate(fronts_, setup_.tag, setup_.params, setup_.x, setup_.y, t_);
  ev.F_after = snapshot_.F;
  ++events_;

  if (!estimate_failure.empty()) flag(ev.index, "interaction_estimate", estimate_failure + "; " + describe(ev));
  monitor(ev.index, before);
  if (log_enabled(LogLevel::Debug)) log(LogLevel::Debug, describe(ev));
  return ev;
}

void Tracker::flag(long event_index, const std::string& kind, const std::string& msg) {
  violations_.push_back({event_index, kind, msg});
  if (setup_.verification) {
    throw Error(ErrorCode::Verification, kind + ": " + msg);
  }
}

void Tracker::monitor(long ev, const FunctionalSnapshot& before) {
  const ParameterSet& p = setup_.params;
  const FunctionalSnapshot& s = snapshot_;
  const auto where = [&] { return " (event " + std::to_string(ev) + ", t=" + std::to_string(t_) + ")"; };

  if (ev >= 0) {
    const DeltaCheck d = assert_delta_F(before, s);
    if (!d.ok) {
      std::ostringstream os;
      os.precision(17);
      os << "F increased by " << d.delta << " (F " << before.F << " -> " << s.F << ")";
      flag(ev, "delta_F", os.str() + where());
    }
  }
  max_shock_seen_ = std::max(max_shock_seen_, s.max_shock);
  if (s.max_shock > p.m0 * (1.0 + 1e-12)) {
    flag(ev, "shock_cap", "shock of size " + std::to_string(s.max_shock) +
                              " exceeds m0 = " + std::to_string(p.m0) + where());
  }
  const double bound = p.xi * p.xi * initial_.bar_L;
  if (s.F > bound * (1.0 + 1e-12) + 1e-15) {
    flag(ev, "F_bound", "F = " + std::to_string(s.F) + " exceeds xi^2 bar_L(0) = " +
                            std::to_string(bound) + where());
  }

  const double F1 = initial_.F;
  if (F1 > 0.0) {
    double tail = 0.0;
    for (auto it = s.F_k.rbegin(); it != s.F_k.rend(); ++it) {
      tail += it->second;
      const int k = it->first;
      const double allowed = std::pow(setup_.mu, k - 1) * F1;
      if (allowed > 0.0) worst_generation_ratio_ = std::max(worst_generation_ratio_, tail / allowed);
      if (tail > allowed + 1e-9 * F1) {
        flag(ev, "generation", "tail of order >= " + std::to_string(k) + " is " +
                                   std::to_string(tail) + " > mu^(k-1) F1(0) = " +
                                   std::to_string(allowed) + where());
      }
    }
  }

  const double half_tv = half_tv_log_p();
  const double gap = std::abs(s.bar_L - (half_tv - s.L0));
  max_bar_L_gap_ = std::max(max_bar_L_gap_, gap);
  if (gap > 1e-11 * std::max(1.0, half_tv)) {
    flag(ev, "bar_L_identity", "sum of strengths differs from TV(log p)/2 - L0 by " +
                                   std::to_string(gap) + where());
  }
}

int schedule_k(double mu, double m0, double nu, double x, double y) {
  if (x + y == 0.0) return 1;
  if (!(mu < 1.0) || !(mu >= 0.0)) {
    throw Error(ErrorCode::Infeasible, "contraction factor mu must lie in [0, 1)");
  }
  int k = 1;
  double term = m0;
  while (term >= 1.0 / (2.0 * nu)) {
    term *= mu;
    ++k;
    if (k > 100000) throw Error(ErrorCode::Infeasible, "generation count diverged");
  }
  return k;
}

double schedule_rho(double rho_start, double nu, double x, double y, long n_below_k) {
  double rho = rho_start;
  if (x + y == 0.0 || n_below_k == 0) return rho;
  const double target = 1.0 / (2.0 * nu);
  while (0.5 * rho * C0(rho) * (x + y) * static_cast<double>(n_below_k) >= target) {
    rho *= 0.5;
  }
  return rho;
}

namespace {

Profile profile_at(const Tracker& tr, double t) {
  Profile pr;
  pr.t = t;
  const auto& fr = tr.fronts();
  const auto& st = tr.states();
  double left = -kInf;
  for (std::size_t i = 0; i <= fr.size(); ++i) {
    const double right = i < fr.size() ? fr[i].position(t) : kInf;
    const State& s = st[i];
    pr.cells.push_back({left, right, s.v, s.u, s.a, s.pressure()});
    left = right;
  }
  return pr;
}

SeriesRow row_of(const FunctionalSnapshot& s) {
  return {s.t, s.L.total(), s.L0, s.Q.total(), s.F, s.max_shock, s.eta0_size, s.zeta0_size};
}

void mirror(Trajectory& tr) {
  for (auto& e : tr.events) {
    e.x = -e.x;
    for (auto* list : {&e.incoming, &e.outgoing}) {
      for (auto& w : *list) w.family = 4 - w.family;
      std::reverse(list->begin(), list->end());
    }
    if (e.absorbed_family != 0) e.absorbed_family = 4 - e.absorbed_family;
  }
  for (auto& r : tr.series) std::swap(r.eta0_size, r.zeta0_size);
  for (auto& p : tr.profiles) {
    std::reverse(p.cells.begin(), p.cells.end());
    for (auto& c : p.cells) {
      const double l = c.x_left;
      c.x_left = -c.x_right;
      c.x_right = -l;
      c.u = -c.u;
    }
  }
  std::swap(tr.final_eta0_size, tr.final_zeta0_size);
}

}  // namespace

ProfileCell sample(const Profile& p, double x) {
  for (const ProfileCell& c : p.cells) {
    if (x >= c.x_left && x < c.x_right) return c;
  }
  return p.cells.back();
}

Trajectory run_fixed(const Scenario& sc, const EngineSetup& setup, const RunOptions& opt) {
  Tracker tr(setup, sc.data);
  Trajectory out;
  out.tag = setup.tag;
  out.x = setup.x;
  out.y = setup.y;
  out.params = setup.params;
  out.mu = setup.mu;
  out.nu = sc.nu;
  out.T = sc.T;
  out.F0 = tr.initial_snapshot().F;
  out.F1_0 = out.F0;
  out.bar_L0 = tr.initial_snapshot().bar_L;
  out.F_min = out.F_max = out.F0;
  if (opt.record_series) out.series.push_back(row_of(tr.snapshot()));

  std::vector<double> snaps;
  for (double s : sc.snapshots)
    if (s >= 0.0 && s <= sc.T) snaps.push_back(s);
  std::sort(snaps.begin(), snaps.end());
  std::size_t pending = 0;

  while (true) {
    const std::optional<Collision> c = tr.next_collision(sc.T);
    const double limit = c ? c->t : kInf;
    while (pending < snaps.size() && snaps[pending] < limit) {
      out.profiles.push_back(profile_at(tr, snaps[pending]));
      ++pending;
    }
    if (!c) break;
    if (static_cast<std::size_t>(tr.event_count()) >= opt.max_events) {
      throw Error(ErrorCode::EventLimit,
                  "event limit " + std::to_string(opt.max_events) + " reached at t=" +
                      std::to_string(tr.time()) + " with " +
                      std::to_string(tr.fronts().size()) + " fronts");
    }
    EventRecord ev = tr.resolve(*c);
    if (opt.record_events) out.events.push_back(std::move(ev));
    if (opt.record_series) out.series.push_back(row_of(tr.snapshot()));
    out.F_min = std::min(out.F_min, tr.snapshot().F);
    out.F_max = std::max(out.F_max, tr.snapshot().F);
  }
  out.profiles.push_back(profile_at(tr, sc.T));

  out.event_count = tr.event_count();
  out.violations = tr.violations();
  out.max_shock = tr.max_shock_seen();
  out.final_eta0_size = tr.snapshot().eta0_size;
  out.final_zeta0_size = tr.snapshot().zeta0_size;
  out.worst_generation_ratio = tr.worst_generation_ratio();
  out.max_bar_L_gap = tr.max_bar_L_gap();
  out.created_by_order = tr.created_by_order();
  return out;
}

Trajectory run(const Scenario& sc0, const RunOptions& opt) {
  validate(sc0.phase);
  validate(sc0.data);
  if (!(sc0.nu > 0.0) || !(sc0.T >= 0.0) || !(sc0.sigma0 > 0.0) ||
      !std::isfinite(sc0.T)) {
    throw Error(ErrorCode::InvalidArgument, "need nu > 0, finite T >= 0 and sigma0 > 0");
  }
  const Admissibility adm = admissible(sc0.phase, sc0.data);
  if (!adm.in_domain) throw Error(ErrorCode::OutsideDomain, adm.reason);
  if (!adm.admissible && !opt.skip_admissibility) {
    throw Error(ErrorCode::NotAdmissible, adm.reason);
  }

  const CaseTag given = adm.tag;
  const bool mirrored = given == CaseTag::Decreasing;
  Scenario sc = sc0;
  if (mirrored) {
    sc.phase = reflect(sc0.phase);
    sc.data = reflect(sc0.data);
  }

  EngineSetup setup;
  setup.phase = sc.phase;
  setup.tag = mirrored ? CaseTag::Increasing : given;
  setup.x = std::abs(sc.phase.eta());
  setup.y = std::abs(sc.phase.zeta());
  setup.verification = opt.verification;
  setup.max_events = opt.max_events;

  const double bar_L0_bound = 0.5 * adm.lhs;
  setup.params = opt.params_override
                     ? *opt.params_override
                     : choose_parameters(setup.tag, setup.x, setup.y, bar_L0_bound);
  setup.params.sigma = sc.sigma0 / sc.nu;
  setup.mu = mu_factor(setup.tag, setup.params, setup.x, setup.y, C0(setup.params.rho));

  Trajectory tr;
  NuSchedule sched;
  sched.sigma = setup.params.sigma;
  int rounds = 0;
  if (opt.params_override) {
    sched.rho = setup.params.rho;
    tr = run_fixed(sc, setup, opt);
    rounds = 1;
  } else {
    sched.k = schedule_k(setup.mu, setup.params.m0, sc.nu, setup.x, setup.y);
    double rho = setup.params.rho;
    while (true) {
      setup.params.rho = rho;
      tr = run_fixed(sc, setup, opt);
      ++rounds;
      long n = 0;
      for (const auto& [g, cnt] : tr.created_by_order)
        if (g < sched.k) n += cnt;
      const double next = schedule_rho(rho, sc.nu, setup.x, setup.y, n);
      sched.fronts_below_k = n;
      if (next == rho || rounds >= opt.max_schedule_rounds) break;
      log(LogLevel::Info, "rho " + std::to_string(rho) + " -> " + std::to_string(next) +
                              " for " + std::to_string(n) + " fronts below order " +
                              std::to_string(sched.k));
      rho = next;
    }
    sched.rho = rho;
    sched.composite_bound =
        std::pow(setup.mu, sched.k - 1) * setup.params.m0 +
        0.5 * rho * C0(rho) * (setup.x + setup.y) * static_cast<double>(sched.fronts_below_k);
  }
  tr.tag = given;
  tr.mirrored = mirrored;
  tr.admissibility = adm;
  tr.schedule = sched;
  tr.schedule_rounds = rounds;
  if (mirrored) mirror(tr);
  return tr;
}

}  // namespace phasefront
