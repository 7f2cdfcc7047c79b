#include "sylv/sylv.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include <json.hpp>

#include "sylv/bench.hpp"
#include "sylv/error.hpp"
#include "sylv/generators.hpp"
#include "sylv/matrix_market.hpp"
#include "sylv/theory.hpp"

struct sylv_problem {
  std::shared_ptr<const sylv::SylvesterProblem> problem;
};

struct sylv_result {
  sylv::SolveResult result;
};

struct sylv_bench {
  std::shared_ptr<const sylv::SylvesterProblem> problem;
  std::string name;
  std::vector<sylv::Method> methods;
  sylv::SolverOptions options;
  bool solution_is_ones = false;
  bool with_theory = true;
  std::vector<sylv::ReferenceRow> reference;
  std::map<std::string, std::string> metadata;
  std::optional<sylv::BenchReport> report;
};

namespace {

thread_local std::string g_last_error;

sylv_status status_of(sylv::ErrorCode code) {
  using sylv::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SYLV_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return SYLV_ERR_DIMENSION;
    case ErrorCode::Parse: return SYLV_ERR_PARSE;
    case ErrorCode::Io: return SYLV_ERR_IO;
    case ErrorCode::Singular: return SYLV_ERR_SINGULAR;
    case ErrorCode::NotSpd: return SYLV_ERR_NOT_SPD;
    case ErrorCode::NonFinite: return SYLV_ERR_NON_FINITE;
    case ErrorCode::SizeGuard: return SYLV_ERR_SIZE_GUARD;
    case ErrorCode::DataNotPresent: return SYLV_ERR_DATA_NOT_PRESENT;
    case ErrorCode::EigenFailure: return SYLV_ERR_EIGEN;
  }
  return SYLV_ERR_INTERNAL;
}

sylv_status fail(sylv_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
sylv_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const sylv::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SYLV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SYLV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SYLV_ERR_INTERNAL, "unknown exception");
  }
}

#define SYLV_REQUIRE(cond, msg) \
  if (!(cond)) return fail(SYLV_ERR_INVALID_ARGUMENT, msg)

sylv::SolverOptions to_options(const sylv_options* o) {
  sylv::SolverOptions s;
  if (!o) return s;
  s.outer_tol = o->outer_tol;
  s.inner_tol = o->inner_tol;
  s.inner_max_iters = o->inner_max_iters;
  s.max_outer = o->max_outer;
  s.alpha = o->alpha;
  s.restart = o->restart;
  return s;
}

sylv::Method to_method(sylv_method m) {
  switch (m) {
    case SYLV_METHOD_MSI: return sylv::Method::Msi;
    case SYLV_METHOD_HSS: return sylv::Method::Hss;
    case SYLV_METHOD_GMRES: return sylv::Method::Gmres;
    case SYLV_METHOD_BICGSTAB: return sylv::Method::Bicgstab;
  }
  throw sylv::Error(sylv::ErrorCode::InvalidArgument, "unknown method id " + std::to_string(m));
}

sylv_termination to_termination(sylv::Termination t) {
  switch (t) {
    case sylv::Termination::Converged: return SYLV_TERM_CONVERGED;
    case sylv::Termination::MaxIterations: return SYLV_TERM_MAX_ITERATIONS;
    case sylv::Termination::Diverged: return SYLV_TERM_DIVERGED;
    case sylv::Termination::Breakdown: return SYLV_TERM_BREAKDOWN;
    case sylv::Termination::Stagnation: return SYLV_TERM_STAGNATION;
  }
  return SYLV_TERM_MAX_ITERATIONS;
}

sylv::ReportFormat to_format(sylv_report_format f) {
  switch (f) {
    case SYLV_REPORT_CSV: return sylv::ReportFormat::Csv;
    case SYLV_REPORT_JSON: return sylv::ReportFormat::Json;
    case SYLV_REPORT_HISTORY_CSV: return sylv::ReportFormat::HistoryCsv;
  }
  throw sylv::Error(sylv::ErrorCode::InvalidArgument, "unknown report format");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sylv_status emit_problem(sylv::SylvesterProblem p, sylv_problem** out) {
  *out = new sylv_problem{std::make_shared<const sylv::SylvesterProblem>(std::move(p))};
  return SYLV_OK;
}

sylv::BoundReport hs_jacobi_bound(const sylv::SylvesterProblem& p) {
  return sylv::msi_bound_check(sylv::hs_split(p.a()), sylv::hs_split(p.b()),
                               sylv::jacobi_split(p.a()), sylv::jacobi_split(p.b()));
}

}  // namespace

extern "C" {

const char* sylv_version(void) { return sylv::version_stamp(); }

const char* sylv_last_error(void) { return g_last_error.c_str(); }

const char* sylv_status_string(sylv_status status) {
  switch (status) {
    case SYLV_OK: return "ok";
    case SYLV_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SYLV_ERR_DIMENSION: return "dimension mismatch";
    case SYLV_ERR_PARSE: return "parse error";
    case SYLV_ERR_IO: return "i/o error";
    case SYLV_ERR_SINGULAR: return "singular";
    case SYLV_ERR_NOT_SPD: return "not symmetric positive definite";
    case SYLV_ERR_NON_FINITE: return "non-finite value";
    case SYLV_ERR_SIZE_GUARD: return "size guard exceeded";
    case SYLV_ERR_DATA_NOT_PRESENT: return "data not present";
    case SYLV_ERR_EIGEN: return "eigensolver failure";
    case SYLV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void sylv_string_free(char* s) { std::free(s); }

void sylv_options_init(sylv_options* opts) {
  if (!opts) return;
  const sylv::SolverOptions d;
  *opts = sylv_options{d.outer_tol, d.inner_tol, d.inner_max_iters, d.max_outer, d.alpha, d.restart};
}

sylv_status sylv_method_from_name(const char* name, sylv_method* out) {
  SYLV_REQUIRE(name && out, "null argument");
  const auto m = sylv::parse_method(name);
  if (!m) return fail(SYLV_ERR_INVALID_ARGUMENT, std::string("unknown method '") + name + "'");
  *out = static_cast<sylv_method>(static_cast<int>(*m));
  return SYLV_OK;
}

const char* sylv_method_name(sylv_method method) {
  try {
    return sylv::to_string(to_method(method));
  } catch (...) {
    return "unknown";
  }
}

sylv_status sylv_problem_example1(size_t n, double r, sylv_problem** out) {
  SYLV_REQUIRE(out, "null output handle");
  return guarded([&] { return emit_problem(sylv::gen_example1(n, r), out); });
}

sylv_status sylv_problem_example2(size_t n, double r, double t, sylv_problem** out) {
  SYLV_REQUIRE(out, "null output handle");
  return guarded([&] { return emit_problem(sylv::gen_example2(n, r, t), out); });
}

sylv_status sylv_problem_example3(const char* path_a, sylv_problem** out) {
  SYLV_REQUIRE(path_a && out, "null argument");
  return guarded([&] { return emit_problem(sylv::load_example3(path_a), out); });
}

sylv_status sylv_problem_load(const char* path_a, const char* path_b, const char* path_c,
                              sylv_problem** out) {
  SYLV_REQUIRE(path_a && path_b && path_c && out, "null argument");
  return guarded([&] {
    return emit_problem(sylv::SylvesterProblem(sylv::Matrix(sylv::read_matrix_market(path_a)),
                                               sylv::Matrix(sylv::read_matrix_market(path_b)),
                                               sylv::read_matrix_market_dense(path_c)),
                        out);
  });
}

sylv_status sylv_problem_from_dense(size_t n, size_t m, const double* a, const double* b,
                                    const double* c, sylv_problem** out) {
  SYLV_REQUIRE(a && b && c && out, "null argument");
  return guarded([&] {
    sylv::DenseMatrix am(n, n, std::vector<double>(a, a + n * n));
    sylv::DenseMatrix bm(m, m, std::vector<double>(b, b + m * m));
    sylv::DenseMatrix cm(n, m, std::vector<double>(c, c + n * m));
    am.require_finite("A");
    bm.require_finite("B");
    cm.require_finite("C");
    return emit_problem(sylv::SylvesterProblem(std::move(am), std::move(bm), std::move(cm)), out);
  });
}

sylv_status sylv_problem_save(const sylv_problem* p, const char* path_a, const char* path_b,
                              const char* path_c) {
  SYLV_REQUIRE(p && path_a && path_b && path_c, "null argument");
  return guarded([&] {
    auto write_coeff = [](const sylv::Matrix& m, const char* path) {
      if (m.is_sparse()) sylv::write_matrix_market(m.sparse(), path);
      else sylv::write_matrix_market(sylv::CsrMatrix::from_dense(m.to_dense()), path);
    };
    write_coeff(p->problem->a(), path_a);
    write_coeff(p->problem->b(), path_b);
    sylv::write_matrix_market(p->problem->c(), path_c);
    return SYLV_OK;
  });
}

sylv_status sylv_problem_dims(const sylv_problem* p, size_t* n, size_t* m) {
  SYLV_REQUIRE(p && n && m, "null argument");
  *n = p->problem->n();
  *m = p->problem->m();
  return SYLV_OK;
}

sylv_status sylv_problem_nnz(const sylv_problem* p, size_t* nnz_a, size_t* nnz_b) {
  SYLV_REQUIRE(p && nnz_a && nnz_b, "null argument");
  auto count = [](const sylv::Matrix& m) -> size_t {
    if (m.is_sparse()) return m.sparse().nnz();
    return sylv::CsrMatrix::from_dense(m.to_dense()).nnz();
  };
  return guarded([&] {
    *nnz_a = count(p->problem->a());
    *nnz_b = count(p->problem->b());
    return SYLV_OK;
  });
}

void sylv_problem_free(sylv_problem* p) { delete p; }

sylv_status sylv_solve(const sylv_problem* p, sylv_method method, const sylv_options* opts,
                       sylv_result** out) {
  SYLV_REQUIRE(p && out, "null argument");
  return guarded([&] {
    *out = new sylv_result{sylv::run_method(to_method(method), *p->problem, to_options(opts))};
    return SYLV_OK;
  });
}

sylv_status sylv_result_get_info(const sylv_result* r, sylv_result_info* out) {
  SYLV_REQUIRE(r && out, "null argument");
  const sylv::SolveReport& rep = r->result.report;
  out->outer_iters = rep.outer_iters;
  out->has_total_inner_iters = rep.total_inner_iters.has_value() ? 1 : 0;
  out->total_inner_iters = rep.total_inner_iters.value_or(0);
  out->converged = rep.converged ? 1 : 0;
  out->termination = to_termination(rep.termination);
  out->wall_seconds = rep.wall_seconds;
  out->final_residual = rep.final_residual();
  out->history_length = rep.residual_history.size();
  return SYLV_OK;
}

sylv_status sylv_result_history(const sylv_result* r, double* buf, size_t len) {
  SYLV_REQUIRE(r && (buf || len == 0), "null argument");
  const auto& h = r->result.report.residual_history;
  std::copy_n(h.begin(), std::min(len, h.size()), buf);
  return SYLV_OK;
}

sylv_status sylv_result_solution(const sylv_result* r, double* buf, size_t len) {
  SYLV_REQUIRE(r && buf, "null argument");
  const auto v = r->result.x.values();
  if (len < v.size()) {
    return fail(SYLV_ERR_DIMENSION, "solution buffer holds " + std::to_string(len) + " of " +
                                        std::to_string(v.size()) + " values");
  }
  std::copy(v.begin(), v.end(), buf);
  return SYLV_OK;
}

sylv_status sylv_result_write_solution(const sylv_result* r, const char* path) {
  SYLV_REQUIRE(r && path, "null argument");
  return guarded([&] {
    sylv::write_matrix_market(r->result.x, path);
    return SYLV_OK;
  });
}

void sylv_result_free(sylv_result* r) { delete r; }

sylv_status sylv_bound(const sylv_problem* p, sylv_bound_info* out) {
  SYLV_REQUIRE(p && out, "null argument");
  return guarded([&] {
    const sylv::BoundReport b = hs_jacobi_bound(*p->problem);
    *out = sylv_bound_info{{b.theta[0], b.theta[1]}, {b.varrho[0], b.varrho[1]}, b.product,
                           b.predicts_convergence ? 1 : 0};
    return SYLV_OK;
  });
}

sylv_status sylv_bound_json(const sylv_problem* p, char** out) {
  SYLV_REQUIRE(p && out, "null argument");
  return guarded([&] {
    const sylv::BoundReport b = hs_jacobi_bound(*p->problem);
    const nlohmann::json j{{"splittings", "hs+jacobi"},
                           {"theta", b.theta},
                           {"varrho", b.varrho},
                           {"product", b.product},
                           {"predicts_convergence", b.predicts_convergence},
                           {"validity", sylv::kBoundValidity}};
    *out = duplicate(j.dump(2) + "\n");
    return SYLV_OK;
  });
}

sylv_status sylv_bench_create(const sylv_problem* p, const char* name, sylv_bench** out) {
  SYLV_REQUIRE(p && name && out, "null argument");
  return guarded([&] {
    auto* b = new sylv_bench;
    b->problem = p->problem;
    b->name = name;
    *out = b;
    return SYLV_OK;
  });
}

sylv_status sylv_bench_add_method(sylv_bench* b, sylv_method method) {
  SYLV_REQUIRE(b, "null bench handle");
  return guarded([&] {
    b->methods.push_back(to_method(method));
    return SYLV_OK;
  });
}

sylv_status sylv_bench_set_options(sylv_bench* b, const sylv_options* opts) {
  SYLV_REQUIRE(b && opts, "null argument");
  b->options = to_options(opts);
  return SYLV_OK;
}

sylv_status sylv_bench_set_solution_ones(sylv_bench* b, int enabled) {
  SYLV_REQUIRE(b, "null bench handle");
  b->solution_is_ones = enabled != 0;
  return SYLV_OK;
}

sylv_status sylv_bench_set_theory(sylv_bench* b, int enabled) {
  SYLV_REQUIRE(b, "null bench handle");
  b->with_theory = enabled != 0;
  return SYLV_OK;
}

sylv_status sylv_bench_add_metadata(sylv_bench* b, const char* key, const char* value) {
  SYLV_REQUIRE(b && key && value, "null argument");
  return guarded([&] {
    b->metadata[key] = value;
    return SYLV_OK;
  });
}

sylv_status sylv_bench_add_reference(sylv_bench* b, const char* method, long outer, long total,
                                     double residual) {
  SYLV_REQUIRE(b && method, "null argument");
  return guarded([&] {
    sylv::ReferenceRow row{method, std::nullopt, std::nullopt, std::nullopt};
    if (outer >= 0) row.outer = static_cast<std::size_t>(outer);
    if (total >= 0) row.total = static_cast<std::size_t>(total);
    if (!std::isnan(residual)) row.residual = residual;
    b->reference.push_back(std::move(row));
    return SYLV_OK;
  });
}

sylv_status sylv_bench_run(sylv_bench* b) {
  SYLV_REQUIRE(b, "null bench handle");
  return guarded([&] {
    sylv::BenchCase c{b->name,         *b->problem,      b->methods,   b->options, {},
                      b->solution_is_ones, b->with_theory, b->reference, b->metadata};
    b->report = sylv::run_bench(c);
    return SYLV_OK;
  });
}

sylv_status sylv_bench_render(const sylv_bench* b, sylv_report_format format, char** out) {
  SYLV_REQUIRE(b && out, "null argument");
  if (!b->report) return fail(SYLV_ERR_INVALID_ARGUMENT, "bench has not been run");
  return guarded([&] {
    *out = duplicate(sylv::render_report(*b->report, to_format(format)));
    return SYLV_OK;
  });
}

sylv_status sylv_bench_write(const sylv_bench* b, sylv_report_format format, const char* path) {
  SYLV_REQUIRE(b && path, "null argument");
  if (!b->report) return fail(SYLV_ERR_INVALID_ARGUMENT, "bench has not been run");
  return guarded([&] {
    sylv::emit_report(*b->report, to_format(format), path);
    return SYLV_OK;
  });
}

void sylv_bench_free(sylv_bench* b) { delete b; }

}  // extern "C"
