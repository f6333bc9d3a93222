/* Copyright The structeig Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of libstructeig. All handles are opaque and owned by the
 * caller; free them with the matching se_*_free function. Functions that can
 * fail return se_status and leave a description in se_last_error(), which is
 * thread-local and valid until the next failing call on the same thread. */

#ifndef STRUCTEIG_STRUCTEIG_H
#define STRUCTEIG_STRUCTEIG_H

#include <stddef.h>
#include <stdint.h>

#if defined(STRUCTEIG_BUILDING_LIBRARY)
#define SE_API __attribute__((visibility("default")))
#else
#define SE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum se_status {
  SE_OK = 0,
  SE_ERR_DIMENSION = 1,
  SE_ERR_ILL_CONDITIONED = 2,
  SE_ERR_STRUCTURE_DEGENERATE = 3,
  SE_ERR_STALLED_STEP = 4,
  SE_ERR_NO_CROSSING = 5,
  SE_ERR_PARSE = 6,
  SE_ERR_IO = 7,
  SE_ERR_INVALID_ARGUMENT = 8,
  SE_ERR_EIGENSOLVER = 9,
  SE_ERR_NOT_WELL_POSED = 10,
  SE_ERR_INTERNAL = 99
} se_status;

typedef enum se_run_status {
  SE_RUN_CONVERGED = 0,
  SE_RUN_MAX_ITERATIONS = 1,
  SE_RUN_STALLED = 2,
  SE_RUN_DEGENERATE_OBJECTIVE = 3
} se_run_status;

typedef enum se_objective_kind {
  SE_OBJ_NEG_REAL_PART = 0,
  SE_OBJ_REAL_PART = 1,
  SE_OBJ_MODULUS_SQUARED = 2,
  SE_OBJ_NEG_MODULUS_SQUARED = 3,
  SE_OBJ_NEG_HALF_MODULUS_SQUARED = 4,
  SE_OBJ_DISTANCE_TO_POINT_SQUARED = 5
} se_objective_kind;

typedef enum se_selector_kind {
  SE_SEL_RIGHTMOST = 0,
  SE_SEL_LEFTMOST = 1,
  SE_SEL_LARGEST_MODULUS = 2,
  SE_SEL_SMALLEST_MODULUS = 3,
  SE_SEL_CLOSEST_TO = 4
} se_selector_kind;

typedef enum se_driver {
  SE_DRIVER_RANK1 = 0,
  SE_DRIVER_FULL_FLOW = 1
} se_driver;

typedef enum se_backend {
  SE_BACKEND_AUTO = 0,
  SE_BACKEND_DENSE = 1,
  SE_BACKEND_SPARSE = 2
} se_backend;

typedef struct se_matrix se_matrix;
typedef struct se_structure se_structure;
typedef struct se_result se_result;

typedef struct se_objective {
  se_objective_kind kind;
  se_selector_kind selector;
  /* z0 for SE_OBJ_DISTANCE_TO_POINT_SQUARED and SE_SEL_CLOSEST_TO. */
  double point_re;
  double point_im;
} se_objective;

typedef struct se_solver_config {
  double h0;
  double theta;
  double tol_f;
  double tol_stat;
  int max_iter;
  double min_h;
  /* Residual accepted when f stops decreasing in floating point. */
  double stat_floor;
  se_backend backend;
  se_driver driver;
} se_solver_config;

typedef struct se_outer_config {
  double tol_r_rel;
  double tol_eps;
  double eps_max_factor;
  int max_outer;
  int warm_start;
  /* First eps to evaluate; 0 selects the Newton step from eps = 0. */
  double eps0;
} se_outer_config;

typedef struct se_trace_row {
  int k;
  double t;
  double lambda_re;
  double lambda_im;
  double f;
  double h;
  double g;
  int accepted;
} se_trace_row;

typedef struct se_outer_row {
  int k;
  double eps;
  double phi;
  double dphi;
  int n_eig;
  const char* step;
} se_outer_row;

typedef struct se_projection_report {
  int samples;
  double idempotency;
  double self_adjointness;
  double nonexpansiveness;
  double membership;
} se_projection_report;

SE_API const char* se_last_error(void);
SE_API const char* se_version(void);
SE_API int se_sparse_backend_available(void);

/* ---- matrices ---------------------------------------------------------- */

SE_API se_status se_matrix_read(const char* path, se_matrix** out);
/* 0-based coordinates; duplicates are summed. im may be NULL. */
SE_API se_status se_matrix_from_triplets(int64_t rows, int64_t cols, int64_t nnz, const int64_t* row_idx,
                                         const int64_t* col_idx, const double* re, const double* im,
                                         se_matrix** out);
/* Column-major values; im may be NULL. */
SE_API se_status se_matrix_from_dense(int64_t rows, int64_t cols, const double* re, const double* im,
                                      se_matrix** out);
SE_API void se_matrix_free(se_matrix* m);
SE_API int64_t se_matrix_rows(const se_matrix* m);
SE_API int64_t se_matrix_cols(const se_matrix* m);
SE_API int64_t se_matrix_stored_entries(const se_matrix* m);
SE_API int se_matrix_is_sparse(const se_matrix* m);
SE_API se_status se_matrix_get(const se_matrix* m, int64_t i, int64_t j, double* re, double* im);
SE_API se_status se_matrix_write(const se_matrix* m, const char* path);
SE_API se_status se_matrix_sigma_min(const se_matrix* m, double* out);

/* ---- structures -------------------------------------------------------- */

/* kind: sparsity-of-input | toeplitz | hankel | hamiltonian | range-corange |
 * full. b and c are required for range-corange only. */
SE_API se_status se_structure_create(const char* kind, int complex_field, const se_matrix* a,
                                     const se_matrix* b, const se_matrix* c, se_structure** out);
SE_API se_status se_structure_read(const char* json_path, const se_matrix* a, se_structure** out);
SE_API void se_structure_free(se_structure* s);
SE_API int64_t se_structure_dim(const se_structure* s);
/* Owned by the structure. */
SE_API const char* se_structure_describe(const se_structure* s);
SE_API se_status se_project_check(const se_structure* s, int samples, uint64_t seed,
                                  se_projection_report* out);

/* ---- solves ------------------------------------------------------------ */

SE_API se_solver_config se_solver_config_default(void);
SE_API se_outer_config se_outer_config_default(void);
/* Objective with its natural selector (rightmost for SE_OBJ_NEG_REAL_PART,
 * largest modulus for SE_OBJ_NEG_MODULUS_SQUARED, ...). */
SE_API se_objective se_objective_default(se_objective_kind kind);
SE_API se_status se_objective_parse(const char* kind, const char* selector, double point_re,
                                    double point_im, se_objective* out);

/* Objective used by a run mode (psa, psr, dist2inst, dist2sing, fixed-eps)
 * when none is given. */
SE_API se_status se_mode_default_objective(const char* mode, se_objective* out);

/* Minimize f(lambda(A + eps E)) over unit-norm E in S. warm_start_path may
 * name a factors JSON file (rank-1 driver only) or be NULL. */
SE_API se_status se_solve_fixed_eps(const se_matrix* a, const se_structure* s, se_objective obj,
                                    double eps, const se_solver_config* cfg,
                                    const char* warm_start_path, se_result** out);
/* Smallest eps with min f(lambda(A + eps E)) <= r. */
SE_API se_status se_solve_nearness(const se_matrix* a, const se_structure* s, se_objective obj,
                                   double r, const se_solver_config* cfg, const se_outer_config* ocfg,
                                   const char* warm_start_path, se_result** out);

/* Loads a JSON problem file and runs it. expected_mode, when non-NULL, must
 * match the file's mode. */
SE_API se_status se_problem_solve(const char* problem_path, const char* expected_mode,
                                  se_result** out);

SE_API void se_result_free(se_result* r);
SE_API se_run_status se_result_status(const se_result* r);
SE_API const char* se_result_status_string(const se_result* r);
SE_API const char* se_result_message(const se_result* r);
/* eps for fixed-eps solves, eps_star for nearness solves. */
SE_API double se_result_eps(const se_result* r);
SE_API double se_result_f(const se_result* r);
SE_API void se_result_lambda(const se_result* r, double* re, double* im);
SE_API int se_result_n_eig(const se_result* r);
SE_API int se_result_iterations(const se_result* r);
SE_API double se_result_stationarity(const se_result* r);
SE_API int se_result_monotonicity_violations(const se_result* r);
SE_API int64_t se_result_trace_length(const se_result* r);
SE_API se_status se_result_trace_row(const se_result* r, int64_t i, se_trace_row* out);
SE_API int64_t se_result_outer_length(const se_result* r);
SE_API se_status se_result_outer_row(const se_result* r, int64_t i, se_outer_row* out);
SE_API se_status se_result_optimizer(const se_result* r, se_matrix** out);
/* u and v as interleaved (re, im) arrays of length 2n; either may be NULL. */
SE_API int64_t se_result_factor_size(const se_result* r);
SE_API se_status se_result_factors(const se_result* r, double* u, double* v, double* rho);
/* Labels echoed into summary.json. */
SE_API se_status se_result_set_mode(se_result* r, const char* mode);
SE_API se_status se_result_add_extra(se_result* r, const char* key, double value);
SE_API se_status se_result_write(const se_result* r, const char* out_dir);

/* ---- traces ------------------------------------------------------------ */

/* Converts an inner or outer trace CSV to plot-ready columns. out_path NULL
 * writes to stdout. */
SE_API se_status se_trace_plot_data(const char* in_path, const char* out_path, double r,
                                    int* rows_written);

#ifdef __cplusplus
}
#endif

#endif /* STRUCTEIG_STRUCTEIG_H */
