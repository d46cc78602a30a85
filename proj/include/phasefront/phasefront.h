#ifndef PHASEFRONT_PHASEFRONT_H
#define PHASEFRONT_PHASEFRONT_H

/* C interface of the phasefront shared library. Every fallible call returns
 * a pf_status; on failure pf_last_error() describes the cause for the
 * calling thread. Strings handed out by the library are released with
 * pf_string_free. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(PHASEFRONT_BUILDING_LIBRARY)
#    define PF_API __declspec(dllexport)
#  else
#    define PF_API __declspec(dllimport)
#  endif
#else
#  define PF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pf_status {
  PF_OK = 0,
  PF_ERR_INVALID_ARGUMENT = 1,
  PF_ERR_PARSE = 2,
  PF_ERR_DOMAIN = 3,
  PF_ERR_NOT_ADMISSIBLE = 4,
  PF_ERR_INFEASIBLE = 5,
  PF_ERR_SOLVER = 6,
  PF_ERR_VERIFICATION = 7,
  PF_ERR_IO = 8,
  PF_ERR_EVENT_LIMIT = 9,
  PF_ERR_INTERNAL = 10
} pf_status;

typedef enum pf_case { PF_CASE_BUBBLE = 0, PF_CASE_INCREASING = 1 } pf_case;

typedef struct pf_scenario pf_scenario;
typedef struct pf_run_result pf_run_result;

typedef struct pf_run_options {
  int verification;              /* nonzero: stop at the first violation */
  int record_events;             /* nonzero: keep the event log */
  unsigned long long max_events; /* 0: library default */
} pf_run_options;

PF_API const char* pf_last_error(void);
PF_API const char* pf_status_string(pf_status status);
PF_API const char* pf_version(void);
PF_API void pf_string_free(char* s);

/* verification = 1, record_events = 1, max_events = 0 */
PF_API pf_run_options pf_run_options_default(void);

PF_API pf_status pf_scenario_load(const char* path, pf_scenario** out);
PF_API pf_status pf_scenario_parse(const char* text, pf_scenario** out);
PF_API void pf_scenario_free(pf_scenario* sc);
PF_API pf_status pf_scenario_set_nu(pf_scenario* sc, double nu);
PF_API pf_status pf_scenario_set_horizon(pf_scenario* sc, double T);
PF_API pf_status pf_scenario_serialize(const pf_scenario* sc, char** out);

/* Report text plus *admissible = 1 when the scenario can be run. */
PF_API pf_status pf_check(const pf_scenario* sc, char** report, int* admissible);

PF_API pf_status pf_run(const pf_scenario* sc, const pf_run_options* opts,
                        pf_run_result** out);
PF_API pf_status pf_run_write(const pf_run_result* r, const char* dir);
PF_API pf_status pf_run_summary(const pf_run_result* r, char** json);
PF_API long long pf_run_event_count(const pf_run_result* r);
PF_API long long pf_run_violation_count(const pf_run_result* r);
PF_API double pf_run_final_composite_size(const pf_run_result* r);
PF_API void pf_run_free(pf_run_result* r);

/* threads = 0 uses all hardware threads. */
PF_API pf_status pf_sweep(pf_case c, int resolution, unsigned threads,
                          const char* path);

PF_API double pf_kcal(double r);
PF_API double pf_h_bubble(double x, double y);
PF_API int pf_in_domain_c(double x, double y);

#ifdef __cplusplus
}
#endif

#endif
