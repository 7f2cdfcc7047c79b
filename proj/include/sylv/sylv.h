/* C interface to the sylvmsi solver library.
 *
 * All handles are opaque and owned by the caller once returned; release them
 * with the matching *_free function. Functions returning sylv_status leave a
 * human-readable message in sylv_last_error() (per thread) on failure.
 * Dense arrays crossing the boundary are column-major.
 */
#ifndef SYLV_SYLV_H
#define SYLV_SYLV_H

#include <stddef.h>

#if defined(_WIN32)
#define SYLV_API __declspec(dllexport)
#else
#define SYLV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sylv_status {
  SYLV_OK = 0,
  SYLV_ERR_INVALID_ARGUMENT = 1,
  SYLV_ERR_DIMENSION = 2,
  SYLV_ERR_PARSE = 3,
  SYLV_ERR_IO = 4,
  SYLV_ERR_SINGULAR = 5,
  SYLV_ERR_NOT_SPD = 6,
  SYLV_ERR_NON_FINITE = 7,
  SYLV_ERR_SIZE_GUARD = 8,
  SYLV_ERR_DATA_NOT_PRESENT = 9,
  SYLV_ERR_EIGEN = 10,
  SYLV_ERR_INTERNAL = 99
} sylv_status;

typedef enum sylv_method {
  SYLV_METHOD_MSI = 0,
  SYLV_METHOD_HSS = 1,
  SYLV_METHOD_GMRES = 2,
  SYLV_METHOD_BICGSTAB = 3
} sylv_method;

typedef enum sylv_termination {
  SYLV_TERM_CONVERGED = 0,
  SYLV_TERM_MAX_ITERATIONS = 1,
  SYLV_TERM_DIVERGED = 2,
  SYLV_TERM_BREAKDOWN = 3,
  SYLV_TERM_STAGNATION = 4
} sylv_termination;

typedef enum sylv_report_format {
  SYLV_REPORT_CSV = 0,
  SYLV_REPORT_JSON = 1,
  SYLV_REPORT_HISTORY_CSV = 2
} sylv_report_format;

typedef struct sylv_problem sylv_problem;
typedef struct sylv_result sylv_result;
typedef struct sylv_bench sylv_bench;

typedef struct sylv_options {
  double outer_tol;       /* relative Frobenius residual, default 1e-8 */
  double inner_tol;       /* inner relative residual, default 0.01 */
  size_t inner_max_iters; /* default 1000 */
  size_t max_outer;       /* outer sweeps / GMRES cycles / BiCGSTAB steps, default 5000 */
  double alpha;           /* HSS shift, <= 0 for the default estimate */
  size_t restart;         /* GMRES cycle length, default 10 */
} sylv_options;

typedef struct sylv_result_info {
  size_t outer_iters;
  int has_total_inner_iters;
  size_t total_inner_iters;
  int converged;
  sylv_termination termination;
  double wall_seconds;
  double final_residual;
  size_t history_length;
} sylv_result_info;

typedef struct sylv_bound_info {
  double theta[2];
  double varrho[2];
  double product;
  int predicts_convergence;
} sylv_bound_info;

SYLV_API const char* sylv_version(void);
SYLV_API const char* sylv_last_error(void);
SYLV_API const char* sylv_status_string(sylv_status status);
SYLV_API void sylv_string_free(char* s);

SYLV_API void sylv_options_init(sylv_options* opts);
SYLV_API sylv_status sylv_method_from_name(const char* name, sylv_method* out);
SYLV_API const char* sylv_method_name(sylv_method method);

/* Problems. Generated problems have the all-ones matrix as exact solution. */
SYLV_API sylv_status sylv_problem_example1(size_t n, double r, sylv_problem** out);
SYLV_API sylv_status sylv_problem_example2(size_t n, double r, double t, sylv_problem** out);
/* SYLV_ERR_DATA_NOT_PRESENT when the file does not exist. */
SYLV_API sylv_status sylv_problem_example3(const char* path_a, sylv_problem** out);
SYLV_API sylv_status sylv_problem_load(const char* path_a, const char* path_b,
                                       const char* path_c, sylv_problem** out);
SYLV_API sylv_status sylv_problem_from_dense(size_t n, size_t m, const double* a,
                                             const double* b, const double* c,
                                             sylv_problem** out);
SYLV_API sylv_status sylv_problem_save(const sylv_problem* p, const char* path_a,
                                       const char* path_b, const char* path_c);
SYLV_API sylv_status sylv_problem_dims(const sylv_problem* p, size_t* n, size_t* m);
SYLV_API sylv_status sylv_problem_nnz(const sylv_problem* p, size_t* nnz_a, size_t* nnz_b);
SYLV_API void sylv_problem_free(sylv_problem* p);

/* Single solves. */
SYLV_API sylv_status sylv_solve(const sylv_problem* p, sylv_method method,
                                const sylv_options* opts, sylv_result** out);
SYLV_API sylv_status sylv_result_get_info(const sylv_result* r, sylv_result_info* out);
/* Copies min(len, history_length) entries. */
SYLV_API sylv_status sylv_result_history(const sylv_result* r, double* buf, size_t len);
/* buf must hold n*m values. */
SYLV_API sylv_status sylv_result_solution(const sylv_result* r, double* buf, size_t len);
SYLV_API sylv_status sylv_result_write_solution(const sylv_result* r, const char* path);
SYLV_API void sylv_result_free(sylv_result* r);

/* Convergence certificate for the HS + Jacobi splittings of a problem. */
SYLV_API sylv_status sylv_bound(const sylv_problem* p, sylv_bound_info* out);
/* JSON object with theta, varrho, product, predicts_convergence, validity. */
SYLV_API sylv_status sylv_bound_json(const sylv_problem* p, char** out);

/* Benchmarks: configure, run once, then render or write reports. */
SYLV_API sylv_status sylv_bench_create(const sylv_problem* p, const char* name, sylv_bench** out);
SYLV_API sylv_status sylv_bench_add_method(sylv_bench* b, sylv_method method);
SYLV_API sylv_status sylv_bench_set_options(sylv_bench* b, const sylv_options* opts);
SYLV_API sylv_status sylv_bench_set_solution_ones(sylv_bench* b, int enabled);
SYLV_API sylv_status sylv_bench_set_theory(sylv_bench* b, int enabled);
SYLV_API sylv_status sylv_bench_add_metadata(sylv_bench* b, const char* key, const char* value);
/* Negative counts and NaN residuals mean "not reported". */
SYLV_API sylv_status sylv_bench_add_reference(sylv_bench* b, const char* method, long outer,
                                              long total, double residual);
SYLV_API sylv_status sylv_bench_run(sylv_bench* b);
SYLV_API sylv_status sylv_bench_render(const sylv_bench* b, sylv_report_format format, char** out);
SYLV_API sylv_status sylv_bench_write(const sylv_bench* b, sylv_report_format format,
                                      const char* path);
SYLV_API void sylv_bench_free(sylv_bench* b);

#ifdef __cplusplus
}
#endif

#endif /* SYLV_SYLV_H */
