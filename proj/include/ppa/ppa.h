#ifndef PPA_PPA_H
#define PPA_PPA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PPA_BUILDING_LIBRARY)
#    define PPA_API __declspec(dllexport)
#  else
#    define PPA_API __declspec(dllimport)
#  endif
#else
#  define PPA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppa_status {
  PPA_OK = 0,
  PPA_ERR_CONFIG = 2,
  PPA_ERR_IO = 3,
  PPA_ERR_INVALID_ARGUMENT = 4,
  PPA_ERR_DIMENSION_MISMATCH = 5,
  PPA_ERR_SOLVER_DIVERGENCE = 6,
  PPA_ERR_SCAN_LIMIT = 7,
  PPA_ERR_MAGNITUDE_LIMIT = 8,
  PPA_ERR_DEPTH_LIMIT = 9,
  PPA_ERR_STEP = 10,
  PPA_ERR_INTERNAL = 99
} ppa_status;

typedef enum ppa_format { PPA_FORMAT_CSV = 0, PPA_FORMAT_JSON = 1 } ppa_format;

typedef struct ppa_scenario ppa_scenario;
typedef struct ppa_scenario_set ppa_scenario_set;
typedef struct ppa_trajectory ppa_trajectory;

/* Message of the last failed call on this thread; "" if none. Valid until
   the next call on the same thread. */
PPA_API const char* ppa_last_error(void);
/* Config field named by the last ConfigError on this thread, or "". */
PPA_API const char* ppa_last_error_field(void);
/* Step index of the last step failure on this thread, or -1. */
PPA_API int64_t ppa_last_error_step(void);

PPA_API const char* ppa_version(void);

/* Strings returned through char** out-parameters are owned by the caller. */
PPA_API void ppa_string_free(char* s);

/* Scenarios */
PPA_API ppa_status ppa_scenario_parse(const char* json_text, ppa_scenario** out);
PPA_API ppa_status ppa_scenario_load(const char* path, ppa_scenario** out);
PPA_API void ppa_scenario_free(ppa_scenario* sc);
PPA_API ppa_status ppa_scenario_to_json(const ppa_scenario* sc, char** out);
PPA_API const char* ppa_scenario_id(const ppa_scenario* sc);
PPA_API size_t ppa_scenario_dimension(const ppa_scenario* sc);

/* A file or every *.json of a directory, sorted by file name. */
PPA_API ppa_status ppa_scenario_set_load(const char* path, ppa_scenario_set** out);
PPA_API void ppa_scenario_set_free(ppa_scenario_set* set);
PPA_API size_t ppa_scenario_set_size(const ppa_scenario_set* set);
/* Borrowed; lives as long as the set. */
PPA_API const ppa_scenario* ppa_scenario_set_get(const ppa_scenario_set* set, size_t i);

/* Trajectories */
PPA_API ppa_status ppa_run(const ppa_scenario* sc, uint64_t steps, ppa_trajectory** out);
PPA_API void ppa_trajectory_free(ppa_trajectory* traj);
PPA_API uint64_t ppa_trajectory_steps(const ppa_trajectory* traj);
/* Copies x_n into coords[0 .. dimension). */
PPA_API ppa_status ppa_trajectory_point(const ppa_trajectory* traj, uint64_t n, double* coords);
/* f(x_n); +infinity outside the domain. */
PPA_API ppa_status ppa_trajectory_value(const ppa_trajectory* traj, uint64_t n, double* value);
PPA_API ppa_status ppa_trajectory_serialize(const ppa_trajectory* traj, ppa_format format,
                                            char** out);
/* path NULL or "-" writes to stdout. */
PPA_API ppa_status ppa_trajectory_write(const ppa_trajectory* traj, ppa_format format,
                                        const char* path);

/* Moduli */
typedef struct ppa_moduli_request {
  uint64_t k;
  uint64_t L;
  uint64_t n;
  uint64_t m;
  uint64_t r;
  const char* g; /* catalog shorthand or JSON AST; NULL means const:0 */
  int force;     /* nonzero lifts the recursion depth guard */
} ppa_moduli_request;

PPA_API ppa_status ppa_moduli_report(const ppa_scenario* sc, const ppa_moduli_request* req,
                                     char** json_out);

/* Verification grid */
typedef struct ppa_verify_options {
  uint64_t psi_k_max;
  uint64_t omega_k_max;
  uint64_t search_cap;
  const char* const* catalog; /* NULL: default catalog */
  size_t catalog_size;
  unsigned threads; /* 0: hardware concurrency */
} ppa_verify_options;

PPA_API void ppa_verify_options_init(ppa_verify_options* options);
/* JSON array of trial reports; *all_hold is 1 iff every trial holds. */
PPA_API ppa_status ppa_verify(const ppa_scenario_set* set, const ppa_verify_options* options,
                              char** json_out, int* all_hold);

/* alpha(k) table for the closed ball of radius b (a rational string). */
PPA_API ppa_status ppa_cover_table(size_t dimension, const char* b, uint64_t k_max,
                                   char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* PPA_PPA_H */
