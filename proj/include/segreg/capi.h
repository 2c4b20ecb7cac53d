#ifndef SEGREG_CAPI_H
#define SEGREG_CAPI_H

/* C API of the segreg solver library. All functions return a
 * segreg_status; out-parameters are written only on SEGREG_OK. Objects
 * are opaque handles released with the matching *_free. Error details for
 * the last failing call on the current thread come from
 * segreg_last_error(). */

#include <stddef.h>

#if defined(_WIN32)
#define SEGREG_API __declspec(dllexport)
#else
#define SEGREG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum segreg_status {
    SEGREG_OK = 0,
    SEGREG_ERR_INVALID_ARGUMENT = 1,
    SEGREG_ERR_VALIDATION = 2,
    SEGREG_ERR_UNKNOWN_BENCHMARK = 3,
    SEGREG_ERR_UNAVAILABLE = 4,
    SEGREG_ERR_NUMERICAL = 5,
    SEGREG_ERR_IO = 6,
    SEGREG_ERR_PROPERTY_VIOLATION = 7,
    SEGREG_ERR_MAX_ITERS = 8
} segreg_status;

typedef struct segreg_config segreg_config;
typedef struct segreg_problem segreg_problem;
typedef struct segreg_solution segreg_solution;
typedef struct segreg_study segreg_study;

SEGREG_API const char* segreg_version(void);

/* Message of the last failing call on this thread; empty string if none. */
SEGREG_API const char* segreg_last_error(void);

/* --- benchmark catalog --- */

SEGREG_API int segreg_benchmark_count(void);
SEGREG_API const char* segreg_benchmark_name(int index); /* NULL if out of range */
SEGREG_API const char* segreg_benchmark_description(const char* name); /* NULL if unknown */

/* --- run configuration --- */

SEGREG_API segreg_status segreg_config_parse_file(const char* path, segreg_config** out);
SEGREG_API segreg_status segreg_config_parse_string(const char* text, segreg_config** out);

/* Applies one `key = value` override using the config-file key set. */
SEGREG_API segreg_status segreg_config_set(segreg_config* cfg, const char* key,
                                           const char* value);

/* Copies the value of a string-valued key ("benchmark", "out", "strategy",
 * "format") into buf; empty string when unset. */
SEGREG_API segreg_status segreg_config_get(const segreg_config* cfg, const char* key,
                                           char* buf, size_t cap);

SEGREG_API void segreg_config_free(segreg_config* cfg);

/* --- problems --- */

/* m <= 0 picks the benchmark's default component count. */
SEGREG_API segreg_status segreg_problem_from_benchmark(const char* name, int m,
                                                       segreg_problem** out);

/* Builds and validates the problem the config describes. */
SEGREG_API segreg_status segreg_problem_from_config(const segreg_config* cfg,
                                                    segreg_problem** out);

SEGREG_API int segreg_problem_components(const segreg_problem* p);
SEGREG_API int segreg_problem_has_exact(const segreg_problem* p);
SEGREG_API void segreg_problem_free(segreg_problem* p);

/* --- solving --- */

/* Runs the projected fixed-point iteration on the config's mesh (key N).
 * A solution handle is produced even when the iteration hits max_iters;
 * check segreg_solution_converged. */
SEGREG_API segreg_status segreg_solve(const segreg_problem* p, const segreg_config* cfg,
                                      segreg_solution** out);

SEGREG_API int segreg_solution_converged(const segreg_solution* s);
SEGREG_API long segreg_solution_iterations(const segreg_solution* s);
SEGREG_API double segreg_solution_final_change(const segreg_solution* s);
SEGREG_API double segreg_solution_residual(const segreg_solution* s);
SEGREG_API double segreg_solution_segregation(const segreg_solution* s);
SEGREG_API double segreg_solution_energy(const segreg_solution* s);
SEGREG_API double segreg_solution_wall_seconds(const segreg_solution* s);
SEGREG_API int segreg_solution_grid_n(const segreg_solution* s);

/* Nodal values of one 1-based component, row-major, (N+1)^2 entries. */
SEGREG_API segreg_status segreg_solution_values(const segreg_solution* s, int component,
                                                double* buf, size_t len);

/* Per-component max nodal error against the exact solution. */
SEGREG_API segreg_status segreg_solution_linf_error(const segreg_solution* s, double* buf,
                                                    size_t len);

/* Deterministic textual report (same content as report.txt). */
SEGREG_API segreg_status segreg_solution_report(const segreg_solution* s, char* buf,
                                                size_t cap);

/* Writes the artifacts selected by the config's out/format keys. */
SEGREG_API segreg_status segreg_solution_write_outputs(const segreg_solution* s,
                                                       const segreg_config* cfg);

SEGREG_API void segreg_solution_free(segreg_solution* s);

/* --- convergence studies --- */

/* Uses the config's ladder (or the exact solution / Richardson reference
 * per use_reference != 0). */
SEGREG_API segreg_status segreg_run_study(const segreg_problem* p, const segreg_config* cfg,
                                          int use_reference, segreg_study** out);

SEGREG_API int segreg_study_point_count(const segreg_study* s);
SEGREG_API segreg_status segreg_study_point(const segreg_study* s, int idx, int* n,
                                            double* h, double* bound, int* bound_ok,
                                            long* iters);
SEGREG_API segreg_status segreg_study_errors(const segreg_study* s, int idx, double* buf,
                                             size_t len);
/* Returns 1 and writes the fitted order, or 0 when degenerate. */
SEGREG_API int segreg_study_fitted_order(const segreg_study* s, double* out);
SEGREG_API int segreg_study_reference_n(const segreg_study* s); /* 0 in exact mode */
SEGREG_API segreg_status segreg_study_report(const segreg_study* s, char* buf, size_t cap);
SEGREG_API segreg_status segreg_study_write_csv(const segreg_study* s, const char* path);
SEGREG_API void segreg_study_free(segreg_study* s);

/* --- verifying stored fields --- */

/* Re-checks the structural properties of fields stored as u_<l>.csv in
 * dir. SEGREG_OK when all budgets hold, SEGREG_ERR_PROPERTY_VIOLATION
 * otherwise; the textual report is written to buf either way. */
SEGREG_API segreg_status segreg_verify_dir(const segreg_problem* p, const segreg_config* cfg,
                                           const char* dir, char* buf, size_t cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif
