#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "phasefront/phasefront.h"

namespace {

const char* kScenario = R"([phase]
a_l = 1
a_m = 1.2
a_r = 1.05
x_a = -1
x_b = 1
[data]
piece = -3 1 0
piece = -1.5 1.1 0.05
piece = 0.5 0.95 -0.04
[run]
nu = 8
T = 3
)";

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(pf_version()) == "0.1.0");
  CHECK(std::string(pf_status_string(PF_OK)) == "ok");
  CHECK(std::string(pf_status_string(PF_ERR_PARSE)) == "parse error");
}

TEST_CASE("scenario lifecycle") {
  pf_scenario* sc = nullptr;
  REQUIRE(pf_scenario_parse(kScenario, &sc) == PF_OK);
  REQUIRE(sc != nullptr);
  CHECK(pf_scenario_set_nu(sc, 4.0) == PF_OK);
  CHECK(pf_scenario_set_nu(sc, -1.0) == PF_ERR_INVALID_ARGUMENT);
  CHECK(pf_scenario_set_horizon(sc, 2.0) == PF_OK);

  char* text = nullptr;
  REQUIRE(pf_scenario_serialize(sc, &text) == PF_OK);
  CHECK(std::string(text).find("nu = 4") != std::string::npos);
  pf_scenario* again = nullptr;
  CHECK(pf_scenario_parse(text, &again) == PF_OK);
  pf_string_free(text);
  pf_scenario_free(again);

  char* report = nullptr;
  int ok = 0;
  REQUIRE(pf_check(sc, &report, &ok) == PF_OK);
  CHECK(ok == 1);
  CHECK(std::string(report).find("ADMISSIBLE") != std::string::npos);
  pf_string_free(report);

  pf_run_options opts = pf_run_options_default();
  pf_run_result* r = nullptr;
  REQUIRE(pf_run(sc, &opts, &r) == PF_OK);
  CHECK(pf_run_event_count(r) > 0);
  CHECK(pf_run_violation_count(r) == 0);
  CHECK(pf_run_final_composite_size(r) >= 0.0);
  char* summary = nullptr;
  REQUIRE(pf_run_summary(r, &summary) == PF_OK);
  CHECK(std::string(summary).find("\"event_count\"") != std::string::npos);
  pf_string_free(summary);

  const auto dir = std::filesystem::temp_directory_path() / "phasefront_capi";
  CHECK(pf_run_write(r, dir.string().c_str()) == PF_OK);
  CHECK(std::filesystem::exists(dir / "summary.json"));
  std::filesystem::remove_all(dir);

  pf_run_free(r);
  pf_scenario_free(sc);
}

TEST_CASE("errors carry a message") {
  pf_scenario* sc = nullptr;
  CHECK(pf_scenario_parse("[phase]\na_l = nope\n", &sc) == PF_ERR_PARSE);
  CHECK(sc == nullptr);
  CHECK(std::string(pf_last_error()).find("line 2") != std::string::npos);
  CHECK(pf_scenario_load("/does/not/exist", &sc) == PF_ERR_IO);
  CHECK(pf_scenario_parse(nullptr, &sc) == PF_ERR_INVALID_ARGUMENT);

  REQUIRE(pf_scenario_parse("[phase]\na_l=1\na_m=0.8\na_r=1.5\nx_a=-1\nx_b=1\n[data]\npiece=0 1 0\n[run]\nT=1\n", &sc) == PF_OK);
  pf_run_result* r = nullptr;
  CHECK(pf_run(sc, nullptr, &r) == PF_ERR_DOMAIN);
  CHECK(r == nullptr);
  pf_scenario_free(sc);

  CHECK(std::isnan(pf_kcal(-1.0)));
  CHECK(pf_kcal(2.0) == doctest::Approx(2.0 / 3.0 * std::log(2.0 + std::sqrt(3.0))));
  CHECK(pf_h_bubble(0.3, 0.0) == doctest::Approx(0.3));
  CHECK(pf_in_domain_c(0.05, 0.05) == 1);
  CHECK(pf_in_domain_c(1.9, 1.9) == 0);
}

TEST_CASE("sweep through the C interface") {
  const auto path = std::filesystem::temp_directory_path() / "phasefront_sweep.csv";
  CHECK(pf_sweep(PF_CASE_INCREASING, 10, 1, path.string().c_str()) == PF_OK);
  CHECK(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
  CHECK(pf_sweep(PF_CASE_BUBBLE, 0, 1, path.string().c_str()) == PF_ERR_INVALID_ARGUMENT);
}
