#include "phasefront/phasefront.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "phasefront/error.hpp"
#include "phasefront/report.hpp"
#include "phasefront/scenario_io.hpp"
#include "phasefront/thresholds.hpp"
#include "phasefront/tracking.hpp"

struct pf_scenario {
  phasefront::Scenario sc;
};

struct pf_run_result {
  phasefront::Scenario sc;
  phasefront::Trajectory tr;
};

namespace {

thread_local std::string g_last_error;

pf_status status_of(phasefront::ErrorCode c) {
  using phasefront::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return PF_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return PF_ERR_PARSE;
    case ErrorCode::OutsideDomain: return PF_ERR_DOMAIN;
    case ErrorCode::NotAdmissible: return PF_ERR_NOT_ADMISSIBLE;
    case ErrorCode::Infeasible: return PF_ERR_INFEASIBLE;
    case ErrorCode::SolverFailure: return PF_ERR_SOLVER;
    case ErrorCode::Verification: return PF_ERR_VERIFICATION;
    case ErrorCode::Io: return PF_ERR_IO;
    case ErrorCode::EventLimit: return PF_ERR_EVENT_LIMIT;
  }
  return PF_ERR_INTERNAL;
}

pf_status fail(pf_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
pf_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const phasefront::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PF_ERR_INTERNAL, "unknown failure");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* pf_last_error(void) { return g_last_error.c_str(); }

const char* pf_status_string(pf_status status) {
  switch (status) {
    case PF_OK: return "ok";
    case PF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PF_ERR_PARSE: return "parse error";
    case PF_ERR_DOMAIN: return "outside the supported domain";
    case PF_ERR_NOT_ADMISSIBLE: return "initial data not admissible";
    case PF_ERR_INFEASIBLE: return "no feasible parameters";
    case PF_ERR_SOLVER: return "solver failure";
    case PF_ERR_VERIFICATION: return "verification failure";
    case PF_ERR_IO: return "i/o error";
    case PF_ERR_EVENT_LIMIT: return "event limit reached";
    case PF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pf_version(void) { return "0.1.0"; }

void pf_string_free(char* s) { std::free(s); }

pf_run_options pf_run_options_default(void) {
  pf_run_options o;
  o.verification = 1;
  o.record_events = 1;
  o.max_events = 0;
  return o;
}

pf_status pf_scenario_load(const char* path, pf_scenario** out) {
  if (!path || !out) return fail(PF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* h = new pf_scenario{phasefront::load_scenario(path)};
    *out = h;
    return PF_OK;
  });
}

pf_status pf_scenario_parse(const char* text, pf_scenario** out) {
  if (!text || !out) return fail(PF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new pf_scenario{phasefront::parse_scenario(text)};
    return PF_OK;
  });
}

void pf_scenario_free(pf_scenario* sc) { delete sc; }

pf_status pf_scenario_set_nu(pf_scenario* sc, double nu) {
  if (!sc) return fail(PF_ERR_INVALID_ARGUMENT, "null scenario");
  if (!(nu > 0.0) || !std::isfinite(nu)) return fail(PF_ERR_INVALID_ARGUMENT, "nu must be positive");
  sc->sc.nu = nu;
  return PF_OK;
}

pf_status pf_scenario_set_horizon(pf_scenario* sc, double T) {
  if (!sc) return fail(PF_ERR_INVALID_ARGUMENT, "null scenario");
  if (!(T >= 0.0) || !std::isfinite(T)) return fail(PF_ERR_INVALID_ARGUMENT, "T must be finite and >= 0");
  sc->sc.T = T;
  return PF_OK;
}

pf_status pf_scenario_serialize(const pf_scenario* sc, char** out) {
  if (!sc || !out) return fail(PF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup_string(phasefront::serialize_scenario(sc->sc));
    return PF_OK;
  });
}

pf_status pf_check(const pf_scenario* sc, char** report, int* admissible) {
  if (!sc || !report || !admissible) return fail(PF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const phasefront::CheckReport rep = phasefront::check_scenario(sc->sc);
    *report = dup_string(rep.text);
    *admissible = rep.admissible ? 1 : 0;
    return PF_OK;
  });
}

pf_status pf_run(const pf_scenario* sc, const pf_run_options* opts, pf_run_result** out) {
  if (!sc || !out) return fail(PF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const pf_run_options o = opts ? *opts : pf_run_options_default();
    phasefront::RunOptions ro;
    ro.verification = o.verification != 0;
    ro.record_events = o.record_events != 0;
    if (o.max_events) ro.max_events = static_cast<std::size_t>(o.max_events);
    auto* r = new pf_run_result{sc->sc, {}};
    try {
      r->tr = phasefront::run(sc->sc, ro);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
    return PF_OK;
  });
}

pf_status pf_run_write(const pf_run_result* r, const char* dir) {
  if (!r || !dir) return fail(PF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    phasefront::write_run_outputs(r->tr, r->sc, dir);
    return PF_OK;
  });
}

pf_status pf_run_summary(const pf_run_result* r, char** json) {
  if (!r || !json) return fail(PF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *json = dup_string(phasefront::summary_json(r->tr, r->sc));
    return PF_OK;
  });
}

long long pf_run_event_count(const pf_run_result* r) { return r ? r->tr.event_count : -1; }

long long pf_run_violation_count(const pf_run_result* r) {
  return r ? static_cast<long long>(r->tr.violations.size()) : -1;
}

double pf_run_final_composite_size(const pf_run_result* r) {
  return r ? r->tr.final_composite_size() : std::numeric_limits<double>::quiet_NaN();
}

void pf_run_free(pf_run_result* r) { delete r; }

pf_status pf_sweep(pf_case c, int resolution, unsigned threads, const char* path) {
  if (!path) return fail(PF_ERR_INVALID_ARGUMENT, "null path");
  if (c != PF_CASE_BUBBLE && c != PF_CASE_INCREASING) return fail(PF_ERR_INVALID_ARGUMENT, "unknown case");
  return guarded([&] {
    phasefront::SweepOptions so;
    so.tag = c == PF_CASE_BUBBLE ? phasefront::CaseTag::Bubble : phasefront::CaseTag::Increasing;
    so.resolution = resolution;
    so.threads = threads;
    phasefront::write_file_atomic(path, phasefront::sweep_csv(so));
    return PF_OK;
  });
}

double pf_kcal(double r) {
  try {
    return phasefront::kcal(r);
  } catch (const phasefront::Error& e) {
    g_last_error = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double pf_h_bubble(double x, double y) {
  try {
    return phasefront::h_bubble(x, y);
  } catch (const phasefront::Error& e) {
    g_last_error = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

int pf_in_domain_c(double x, double y) { return phasefront::in_domain_c(x, y) ? 1 : 0; }

}  // extern "C"
