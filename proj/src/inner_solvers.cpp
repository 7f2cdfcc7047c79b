#include "sylv/inner_solvers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sylv/error.hpp"

namespace sylv {

void InnerConfig::validate() const {
  if (!(tol > 0.0 && tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "InnerConfig: tol must lie in (0, 1)");
  }
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "InnerConfig: max_iters must be >= 1");
}

DenseMatrix diag_sylvester_solve(std::span<const double> da, std::span<const double> db,
                                 const DenseMatrix& c) {
  if (c.rows() != da.size() || c.cols() != db.size()) {
    throw Error(ErrorCode::DimensionMismatch, "diag_sylvester_solve: C is " +
                                                  std::to_string(c.rows()) + "x" +
                                                  std::to_string(c.cols()));
  }
  constexpr double kScale = 1e3 * std::numeric_limits<double>::epsilon();
  DenseMatrix x(c.rows(), c.cols());
  for (std::size_t j = 0; j < db.size(); ++j) {
    for (std::size_t i = 0; i < da.size(); ++i) {
      const double denom = da[i] + db[j];
      if (!(std::abs(denom) > kScale * (std::abs(da[i]) + std::abs(db[j])))) {
        throw Error(ErrorCode::Singular,
                    "diag_sylvester_solve: a_ii + b_jj vanishes at (i, j) = (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      x(i, j) = c(i, j) / denom;
    }
  }
  return x;
}

InnerResult cg_sylvester_solve(const Matrix& m, const Matrix& p, const DenseMatrix& g,
                               const InnerConfig& cfg, const DenseMatrix& x0) {
  cfg.validate();
  if (x0.rows() != g.rows() || x0.cols() != g.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "cg_sylvester_solve: X0 and G differ in shape");
  }
  InnerResult result{x0, 0, 0.0};
  DenseMatrix r = g;
  r -= sylvester_apply(m, p, result.x);
  r.require_finite("cg_sylvester_solve");

  const double r0_norm = frobenius_norm(r);
  if (r0_norm == 0.0) return result;

  DenseMatrix dir = r;
  double rr = frobenius_dot(r, r);
  double rel = 1.0;
  while (result.iters < cfg.max_iters) {
    const DenseMatrix q = sylvester_apply(m, p, dir);
    const double curvature = frobenius_dot(dir, q);
    if (!std::isfinite(curvature)) {
      throw Error(ErrorCode::NonFinite, "cg_sylvester_solve: non-finite curvature at iteration " +
                                            std::to_string(result.iters + 1));
    }
    if (curvature <= 0.0) {
      throw Error(ErrorCode::NotSpd,
                  "cg_sylvester_solve: operator is not positive definite (iteration " +
                      std::to_string(result.iters + 1) + ")");
    }
    const double alpha = rr / curvature;
    axpy(alpha, dir, result.x);
    axpy(-alpha, q, r);
    ++result.iters;

    const double rr_new = frobenius_dot(r, r);
    if (!std::isfinite(rr_new)) {
      throw Error(ErrorCode::NonFinite, "cg_sylvester_solve: non-finite residual at iteration " +
                                            std::to_string(result.iters));
    }
    rel = std::sqrt(rr_new) / r0_norm;
    if (rel <= cfg.tol) break;
    const double beta = rr_new / rr;
    rr = rr_new;
    dir *= beta;
    dir += r;
  }
  result.achieved_rel_residual = rel;
  return result;
}

DenseMatrix dense_direct_solve(const SylvesterProblem& p) {
  const DenseMatrix k = kron_assemble(p.a(), p.b());
  const DenseMatrix rhs(p.n() * p.m(), 1, vec(p.c()));
  const DenseMatrix x = solve_dense(k, rhs);
  return unvec(x.values(), p.n(), p.m());
}

}  // namespace sylv
