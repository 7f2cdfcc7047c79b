#pragma once

#include <cstddef>
#include <span>

#include "sylv/dense_matrix.hpp"
#include "sylv/la.hpp"
#include "sylv/matrix.hpp"

namespace sylv {

/// Stopping rule for an inner Sylvester solve: relative Frobenius residual
/// against the residual of the starting guess.
struct InnerConfig {
  double tol = 0.01;
  std::size_t max_iters = 1000;

  void validate() const;
};

struct InnerResult {
  DenseMatrix x;
  std::size_t iters = 0;
  double achieved_rel_residual = 0.0;
};

/// Closed-form solve of D_A X + X D_B = C: x_ij = c_ij / (a_ii + b_jj).
/// Throws Singular when |a_ii + b_jj| <= 1e3 * eps * (|a_ii| + |b_jj|).
DenseMatrix diag_sylvester_solve(std::span<const double> da, std::span<const double> db,
                                 const DenseMatrix& c);

/// Conjugate gradients on L(X) = M X + X P under the trace inner product.
/// M and P must be symmetric with L positive definite. Reaching max_iters is
/// reported through `iters`, not raised; a non-finite or non-positive
/// curvature value throws.
InnerResult cg_sylvester_solve(const Matrix& m, const Matrix& p, const DenseMatrix& g,
                               const InnerConfig& cfg, const DenseMatrix& x0);

/// Small-scale oracle: assembles I (x) A + B^T (x) I and eliminates with
/// partial pivoting. Limited to n*m <= kKronAssembleLimit.
DenseMatrix dense_direct_solve(const SylvesterProblem& p);

}  // namespace sylv
