#pragma once

// Human-readable check report, run exports and threshold sweeps.

#include <string>

#include "phasefront/tracking.hpp"

namespace phasefront {

struct CheckReport {
  bool admissible = false;
  bool in_domain = false;
  std::string text;
};

// Never throws for rejections; they are described in the text.
CheckReport check_scenario(const Scenario& sc);

std::string events_json(const Trajectory& tr);
std::string functional_csv(const Trajectory& tr);
std::string profile_csv(const Profile& p);
std::string summary_json(const Trajectory& tr, const Scenario& sc);

// events.json, functional.csv, profile_<i>.csv per snapshot plus
// profile_final.csv, summary.json.
void write_run_outputs(const Trajectory& tr, const Scenario& sc,
                       const std::string& dir);

struct SweepOptions {
  CaseTag tag = CaseTag::Bubble;
  int resolution = 100;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Cell-centred grid on (0, 2)^2 with bar_L0 = 0. Columns x, y, in_domain,
// H, K_of_H, mu, plus cmp_region, H_le_sum for the bubble case. NaN marks
// quantities that do not exist at a cell.
std::string sweep_csv(const SweepOptions& opt);

}  // namespace phasefront
