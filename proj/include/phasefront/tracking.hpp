#pragma once

// Event-driven front tracking with the interaction monitor running inline.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phasefront/config.hpp"
#include "phasefront/front.hpp"
#include "phasefront/functionals.hpp"
#include "phasefront/thresholds.hpp"

namespace phasefront {

inline constexpr std::size_t kDefaultEventLimit = 10'000'000;

struct Scenario {
  PhaseConfig phase;
  InitialData data;
  double nu = 8.0;
  double T = 1.0;
  double sigma0 = 0.1;
  std::uint64_t seed = 0;
  std::vector<double> snapshots;  // profile times in [0, T]
};

// Everything the engine needs. The phase configuration is the one actually
// simulated: bubble or increasing (a decreasing layout arrives mirrored).
struct EngineSetup {
  PhaseConfig phase;
  CaseTag tag = CaseTag::Bubble;
  double x = 0.0;  // |eta|
  double y = 0.0;  // |zeta|
  ParameterSet params;
  double mu = 0.5;
  bool verification = true;
  std::size_t max_events = kDefaultEventLimit;
};

struct WaveRecord {
  int family = 1;  // 1 or 3
  double strength = 0.0;
  int generation = 1;
};

struct EventRecord {
  long index = 0;
  double t = 0.0;
  double x = 0.0;
  std::string kind;    // crossing | same_family | composite
  std::string solver;  // composite events only
  std::vector<WaveRecord> incoming;
  std::vector<WaveRecord> outgoing;
  int absorbed_family = 0;  // 0 when nothing was attached
  double absorbed = 0.0;
  double F_before = 0.0;
  double F_after = 0.0;
};

struct Violation {
  long event = -1;
  std::string kind;
  std::string message;
};

struct Collision {
  double t = 0.0;
  double x = 0.0;
  std::size_t left = 0;  // index of the left front of the pair
  long left_id = 0;
};

class Tracker {
 public:
  Tracker(EngineSetup setup, const InitialData& data);

  // Earliest interaction at or before `horizon`, if any.
  std::optional<Collision> next_collision(double horizon) const;
  EventRecord resolve(const Collision& c);

  const std::vector<Front>& fronts() const { return fronts_; }
  // states()[i] lies left of fronts()[i]; size fronts().size() + 1.
  const std::vector<State>& states() const { return states_; }
  double time() const { return t_; }
  long event_count() const { return events_; }
  const EngineSetup& setup() const { return setup_; }

  const FunctionalSnapshot& snapshot() const { return snapshot_; }
  const FunctionalSnapshot& initial_snapshot() const { return initial_; }
  const std::vector<Violation>& violations() const { return violations_; }
  // Fronts created so far, by generation order.
  const std::map<int, long>& created_by_order() const { return created_; }
  long created_below(int k) const;
  double worst_generation_ratio() const { return worst_generation_ratio_; }
  double max_shock_seen() const { return max_shock_seen_; }
  double max_bar_L_gap() const { return max_bar_L_gap_; }

  // 1/2 TV(log p) over the derived states, composite interiors included.
  double half_tv_log_p() const;

 private:
  void approximate_initial(const InitialData& data);
  void append_wave(std::vector<Front>& out, Family f, double eps, int generation,
                   double x, bool split);
  Front make_front(FrontKind kind, double x);
  void refresh();
  void monitor(long event_index, const FunctionalSnapshot& before);
  void flag(long event_index, const std::string& kind, const std::string& msg);

  EngineSetup setup_;
  std::vector<Front> fronts_;
  std::vector<State> states_;
  State far_left_;
  double t_ = 0.0;
  long next_id_ = 0;
  long events_ = 0;
  FunctionalSnapshot snapshot_;
  FunctionalSnapshot initial_;
  std::vector<Violation> violations_;
  std::map<int, long> created_;
  double worst_generation_ratio_ = 0.0;
  double max_shock_seen_ = 0.0;
  double max_bar_L_gap_ = 0.0;
};

// Adds `s` (generation `order`) to signed per-order attachments whose
// entries share one sign; opposite signs cancel from the highest order down.
void attach_strength(std::map<int, double>& attached, double s, int order);
double attached_total(const std::map<int, double>& attached);

struct NuSchedule {
  double sigma = 0.1;
  double rho = 0.1;
  int k = 1;
  long fronts_below_k = 0;
  double composite_bound = 0.0;  // mu^{k-1} m0 + (rho/2) C0 (x+y) N
};

// k from mu^{k-1} m0 < 1/(2 nu); rho halved from `rho_start` until
// (rho/2) C0(rho)(x+y) N < 1/(2 nu).
int schedule_k(double mu, double m0, double nu, double x, double y);
double schedule_rho(double rho_start, double nu, double x, double y, long n_below_k);

struct ProfileCell {
  double x_left = 0.0, x_right = 0.0;
  double v = 1.0, u = 0.0, a = 1.0, p = 1.0;
};

struct Profile {
  double t = 0.0;
  std::vector<ProfileCell> cells;
};

struct SeriesRow {
  double t = 0.0, L = 0.0, L0 = 0.0, Q = 0.0, F = 0.0, max_shock = 0.0;
  double eta0_size = 0.0, zeta0_size = 0.0;
};

struct RunOptions {
  bool verification = true;
  bool record_events = true;
  bool record_series = true;
  std::size_t max_events = kDefaultEventLimit;
  std::optional<ParameterSet> params_override;  // skips the chooser
  bool skip_admissibility = false;  // exploratory use only
  int max_schedule_rounds = 12;
};

struct Trajectory {
  CaseTag tag = CaseTag::Bubble;  // as given (before mirroring)
  bool mirrored = false;
  Admissibility admissibility;
  double x = 0.0, y = 0.0;  // engine |eta|, |zeta|
  ParameterSet params;
  double mu = 0.0;
  NuSchedule schedule;
  int schedule_rounds = 0;
  double nu = 1.0, T = 0.0;

  std::vector<EventRecord> events;
  std::vector<SeriesRow> series;
  std::vector<Profile> profiles;  // requested snapshots, then t = T
  std::vector<Violation> violations;

  long event_count = 0;
  double F0 = 0.0, bar_L0 = 0.0, F1_0 = 0.0;
  double F_min = 0.0, F_max = 0.0;
  double max_shock = 0.0;
  double final_eta0_size = 0.0, final_zeta0_size = 0.0;
  double worst_generation_ratio = 0.0;
  double max_bar_L_gap = 0.0;
  std::map<int, long> created_by_order;

  double final_composite_size() const { return final_eta0_size + final_zeta0_size; }
  const Profile& final_profile() const { return profiles.back(); }
};

// Full pipeline: admissibility, parameter choice, nu-schedule (re-running
// until the front count used for rho is consistent), tracking to T.
Trajectory run(const Scenario& sc, const RunOptions& opt = {});

// Single pass with fixed parameters; no schedule iteration.
Trajectory run_fixed(const Scenario& sc, const EngineSetup& setup,
                     const RunOptions& opt = {});

// (v, u) of a profile at x (right-continuous).
ProfileCell sample(const Profile& p, double x);

}  // namespace phasefront
