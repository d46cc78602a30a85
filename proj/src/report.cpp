#include "phasefront/report.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "phasefront/error.hpp"
#include "phasefront/model.hpp"
#include "phasefront/scenario_io.hpp"

namespace phasefront {

namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

ordered_json waves_json(const std::vector<WaveRecord>& ws) {
  ordered_json arr = ordered_json::array();
  for (const auto& w : ws) {
    arr.push_back({{"family", w.family}, {"strength", w.strength}, {"generation", w.generation}});
  }
  return arr;
}

ordered_json params_json(const ParameterSet& p) {
  return {{"m0", p.m0},         {"xi", p.xi},           {"Keta_l", p.Keta_l},
          {"Kzeta_l", p.Kzeta_l}, {"Keta_m", p.Keta_m},   {"Kzeta_m", p.Kzeta_m},
          {"Keta_r", p.Keta_r}, {"Kzeta_r", p.Kzeta_r}, {"rho", p.rho},
          {"sigma", p.sigma}};
}

}  // namespace

CheckReport check_scenario(const Scenario& sc) {
  CheckReport rep;
  std::ostringstream os;
  const Admissibility a = admissible(sc.phase, sc.data);
  rep.in_domain = a.in_domain;
  rep.admissible = a.in_domain && a.admissible;

  os << "eta = " << num(a.eta) << ", zeta = " << num(a.zeta) << "\n";
  os << "|eta| = " << num(std::abs(a.eta)) << ", |zeta| = " << num(std::abs(a.zeta)) << "\n";
  if (!a.in_domain) {
    os << "case: unsupported\n";
    os << "domain: outside (" << a.reason << ")\n";
    os << "result: REJECTED\n";
    rep.text = os.str();
    return rep;
  }
  os << "case: " << to_string(a.tag);
  if (a.tag == CaseTag::Decreasing) os << " (treated as increasing after x -> -x)";
  os << "\n";
  os << "domain: inside\n";
  os << "TV(log p0) = " << num(a.tv_log_p) << ", TV(u0) = " << num(a.tv_u) << "\n";
  os << "TV(log p0) + TV(u0)/min a = " << num(a.lhs) << "\n";
  if (std::isinf(a.threshold)) {
    os << "threshold: +inf (no phase jump)\n";
  } else {
    os << "H = " << num(a.h) << "\n";
    os << "threshold K(H) = " << num(a.threshold) << "\n";
  }
  os << "margin = " << num(a.margin()) << "\n";
  if (!a.admissible) {
    os << "violated: TV(log p0) + TV(u0)/min a < K(H)\n";
    os << "result: REJECTED\n";
    rep.text = os.str();
    return rep;
  }

  const CaseTag engine = a.tag == CaseTag::Bubble ? CaseTag::Bubble : CaseTag::Increasing;
  double x = std::abs(a.eta), y = std::abs(a.zeta);
  if (a.tag == CaseTag::Decreasing) std::swap(x, y);
  try {
    const double bar = 0.5 * a.lhs;
    const ParameterSet p = choose_parameters(engine, x, y, bar);
    const double mu = mu_factor(engine, p, x, y, C0(p.rho));
    os << "parameters: m0 = " << num(p.m0) << ", xi = " << num(p.xi) << ", rho = " << num(p.rho)
       << "\n";
    os << "  Keta_l = " << num(p.Keta_l) << ", Kzeta_l = " << num(p.Kzeta_l) << "\n";
    os << "  Keta_m = " << num(p.Keta_m) << ", Kzeta_m = " << num(p.Kzeta_m) << "\n";
    os << "  Keta_r = " << num(p.Keta_r) << ", Kzeta_r = " << num(p.Kzeta_r) << "\n";
    os << "mu = " << num(mu) << "\n";
    const auto conds = check_parameters(engine, p, x, y, bar);
    int failed = 0;
    for (const auto& c : conds) {
      if (!c.ok) {
        ++failed;
        os << "  condition failed: " << c.name << " (slack " << num(c.slack) << ")\n";
      }
    }
    os << "conditions: " << conds.size() - failed << "/" << conds.size() << " hold\n";
    if (failed) rep.admissible = false;
  } catch (const Error& e) {
    os << "parameter selection failed: " << e.what() << "\n";
    rep.admissible = false;
  }
  os << "result: " << (rep.admissible ? "ADMISSIBLE" : "REJECTED") << "\n";
  rep.text = os.str();
  return rep;
}

std::string events_json(const Trajectory& tr) {
  ordered_json arr = ordered_json::array();
  for (const EventRecord& e : tr.events) {
    ordered_json j = {{"index", e.index}, {"t", e.t}, {"x", e.x}, {"kind", e.kind}};
    if (!e.solver.empty()) j["solver"] = e.solver;
    j["incoming"] = waves_json(e.incoming);
    j["outgoing"] = waves_json(e.outgoing);
    if (e.absorbed_family != 0) {
      j["absorbed"] = {{"family", e.absorbed_family}, {"strength", e.absorbed}};
    }
    j["F_before"] = e.F_before;
    j["F_after"] = e.F_after;
    j["dF"] = e.F_after - e.F_before;
    arr.push_back(std::move(j));
  }
  return arr.dump(1) + "\n";
}

std::string functional_csv(const Trajectory& tr) {
  std::ostringstream os;
  os << "t,L,L0,Q,F,max_shock,eta0_size,zeta0_size\n";
  for (const SeriesRow& r : tr.series) {
    os << num(r.t) << ',' << num(r.L) << ',' << num(r.L0) << ',' << num(r.Q) << ','
       << num(r.F) << ',' << num(r.max_shock) << ',' << num(r.eta0_size) << ','
       << num(r.zeta0_size) << '\n';
  }
  return os.str();
}

std::string profile_csv(const Profile& p) {
  std::ostringstream os;
  os << "x_left,x_right,v,u,a,p\n";
  for (const ProfileCell& c : p.cells) {
    os << num(c.x_left) << ',' << num(c.x_right) << ',' << num(c.v) << ',' << num(c.u)
       << ',' << num(c.a) << ',' << num(c.p) << '\n';
  }
  return os.str();
}

std::string summary_json(const Trajectory& tr, const Scenario& sc) {
  ordered_json j;
  j["case"] = to_string(tr.tag);
  j["mirrored"] = tr.mirrored;
  j["eta"] = tr.admissibility.eta;
  j["zeta"] = tr.admissibility.zeta;
  j["tv_expression"] = tr.admissibility.lhs;
  j["threshold"] = std::isinf(tr.admissibility.threshold) ? ordered_json("inf")
                                                          : ordered_json(tr.admissibility.threshold);
  j["nu"] = sc.nu;
  j["T"] = sc.T;
  j["seed"] = sc.seed;
  j["parameters"] = params_json(tr.params);
  j["mu"] = tr.mu;
  j["schedule"] = {{"sigma", tr.schedule.sigma},
                   {"rho", tr.schedule.rho},
                   {"k", tr.schedule.k},
                   {"fronts_below_k", tr.schedule.fronts_below_k},
                   {"composite_bound", tr.schedule.composite_bound},
                   {"rounds", tr.schedule_rounds}};
  j["event_count"] = tr.event_count;
  j["max_shock"] = tr.max_shock;
  j["F0"] = tr.F0;
  j["bar_L0"] = tr.bar_L0;
  j["F_min"] = tr.F_min;
  j["F_max"] = tr.F_max;
  j["final_composite_sizes"] = {{"eta0", tr.final_eta0_size}, {"zeta0", tr.final_zeta0_size}};
  j["worst_generation_ratio"] = tr.worst_generation_ratio;
  std::size_t dF = 0;
  for (const auto& v : tr.violations)
    if (v.kind == "delta_F") ++dF;
  j["delta_F_violations"] = dF;
  ordered_json vs = ordered_json::array();
  for (const auto& v : tr.violations) {
    vs.push_back({{"event", v.event}, {"kind", v.kind}, {"message", v.message}});
  }
  j["violations"] = vs;
  return j.dump(2) + "\n";
}

void write_run_outputs(const Trajectory& tr, const Scenario& sc, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir + "': " + ec.message());
  const fs::path d(dir);
  write_file_atomic((d / "events.json").string(), events_json(tr));
  write_file_atomic((d / "functional.csv").string(), functional_csv(tr));
  for (std::size_t i = 0; i + 1 < tr.profiles.size(); ++i) {
    write_file_atomic((d / ("profile_" + std::to_string(i) + ".csv")).string(),
                      profile_csv(tr.profiles[i]));
  }
  write_file_atomic((d / "profile_final.csv").string(), profile_csv(tr.final_profile()));
  write_file_atomic((d / "summary.json").string(), summary_json(tr, sc));
}

std::string sweep_csv(const SweepOptions& opt) {
  if (opt.resolution < 1) throw Error(ErrorCode::InvalidArgument, "sweep resolution must be >= 1");
  if (opt.tag == CaseTag::Decreasing) {
    throw Error(ErrorCode::InvalidArgument, "sweep the increasing case instead");
  }
  const int n = opt.resolution;
  const bool bubble = opt.tag == CaseTag::Bubble;
  std::vector<std::string> rows(static_cast<std::size_t>(n) * n);

  auto cell = [&](int i, int j) {
    const double x = (i + 0.5) * 2.0 / n;
    const double y = (j + 0.5) * 2.0 / n;
    bool inside = true;
    double H = kNaN, K = kNaN, mu = kNaN;
    if (bubble) {
      H = h_bubble(x, y);
    } else {
      const QuadRootsC q = quad_roots_c(x, y);
      inside = q.feasible;
      if (inside) H = q.window_lo;
    }
    if (inside) {
      K = kcal(H);
      try {
        const ParameterSet p = choose_parameters(opt.tag, x, y, 0.0);
        mu = mu_factor(opt.tag, p, x, y, C0(p.rho));
      } catch (const Error&) {
        mu = kNaN;
      }
    }
    std::ostringstream os;
    os << num(x) << ',' << num(y) << ',' << (inside ? 1 : 0) << ',' << num(H) << ','
       << num(K) << ',' << num(mu);
    if (bubble) {
      os << ',' << (x + y < 0.5 ? 1 : 0) << ',' << (H <= x + y ? 1 : 0);
    }
    return os.str();
  };

  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::atomic<int> next_row{0};
  auto worker = [&] {
    for (int j; (j = next_row.fetch_add(1)) < n;) {
      for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(j) * n + i] = cell(i, j);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream out;
  out << "x,y,in_domain,H,K_of_H,mu";
  if (bubble) out << ",cmp_region,H_le_sum";
  out << '\n';
  for (const auto& r : rows) out << r << '\n';
  return out.str();
}

}  // namespace phasefront
