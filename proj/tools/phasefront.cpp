// Command-line front end over the C interface.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "phasefront/phasefront.h"

namespace {

int report_failure(pf_status s, const char* what) {
  std::fprintf(stderr, "phasefront: %s: %s (%s)\n", what, pf_status_string(s), pf_last_error());
  return 2;
}

struct ScenarioHandle {
  pf_scenario* p = nullptr;
  ~ScenarioHandle() { pf_scenario_free(p); }
};

struct RunHandle {
  pf_run_result* p = nullptr;
  ~RunHandle() { pf_run_free(p); }
};

int cmd_check(const std::string& file) {
  ScenarioHandle sc;
  if (pf_status s = pf_scenario_load(file.c_str(), &sc.p); s != PF_OK) {
    return report_failure(s, "loading scenario");
  }
  char* text = nullptr;
  int ok = 0;
  if (pf_status s = pf_check(sc.p, &text, &ok); s != PF_OK) return report_failure(s, "check");
  std::fputs(text, stdout);
  pf_string_free(text);
  return ok ? 0 : 1;
}

int cmd_run(const std::string& file, const std::string& out, double nu, double T) {
  ScenarioHandle sc;
  if (pf_status s = pf_scenario_load(file.c_str(), &sc.p); s != PF_OK) {
    return report_failure(s, "loading scenario");
  }
  if (nu > 0.0) {
    if (pf_status s = pf_scenario_set_nu(sc.p, nu); s != PF_OK) return report_failure(s, "--nu");
  }
  if (T >= 0.0) {
    if (pf_status s = pf_scenario_set_horizon(sc.p, T); s != PF_OK) return report_failure(s, "--t");
  }
  RunHandle r;
  pf_run_options opts = pf_run_options_default();
  if (pf_status s = pf_run(sc.p, &opts, &r.p); s != PF_OK) return report_failure(s, "run");
  if (pf_status s = pf_run_write(r.p, out.c_str()); s != PF_OK) return report_failure(s, "writing outputs");
  const long long violations = pf_run_violation_count(r.p);
  std::printf("events: %lld\nviolations: %lld\noutput: %s\n", pf_run_event_count(r.p),
              violations, out.c_str());
  return violations == 0 ? 0 : 1;
}

int cmd_sweep(const std::string& which, int res, unsigned threads, const std::string& out) {
  const pf_case c = which == "bubble" ? PF_CASE_BUBBLE : PF_CASE_INCREASING;
  if (pf_status s = pf_sweep(c, res, threads, out.c_str()); s != PF_OK) return report_failure(s, "sweep");
  std::printf("wrote %s (%d x %d cells)\n", out.c_str(), res, res);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Front tracking for the isothermal phase-transition system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pf_version()));

  std::string check_file;
  auto* check = app.add_subcommand("check", "Report case, thresholds and parameters for a scenario");
  check->add_option("file", check_file, "Scenario file")->required()->check(CLI::ExistingFile);

  std::string run_file, run_out;
  double nu = -1.0, T = -1.0;
  auto* run = app.add_subcommand("run", "Track fronts up to T and write the outputs");
  run->add_option("file", run_file, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", run_out, "Output directory")->required();
  run->add_option("--nu", nu, "Accuracy index (overrides the file)")->check(CLI::PositiveNumber);
  run->add_option("--t", T, "Horizon (overrides the file)")->check(CLI::NonNegativeNumber);

  std::string which = "bubble", sweep_out;
  int res = 100;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Tabulate thresholds over a grid of (|eta|, |zeta|)");
  sweep->add_option("--case", which, "bubble or increasing")
      ->check(CLI::IsMember({"bubble", "increasing"}));
  sweep->add_option("--res", res, "Cells per axis")->check(CLI::Range(1, 5000));
  sweep->add_option("--threads", threads, "Worker threads (0 = all)");
  sweep->add_option("-o,--out", sweep_out, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*check) return cmd_check(check_file);
  if (*run) return cmd_run(run_file, run_out, nu, T);
  if (*sweep) return cmd_sweep(which, res, threads, sweep_out);
  return 2;
}
