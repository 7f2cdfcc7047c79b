#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sylv/dense_matrix.hpp"
#include "sylv/solve_report.hpp"

namespace sylv::detail {

using LinearMap = std::function<DenseMatrix(const DenseMatrix&)>;

struct KrylovOutcome {
  DenseMatrix x;
  std::size_t cycles = 0;
  std::size_t steps = 0;
  /// One entry per cycle (GMRES) or iteration (BiCGSTAB), starting with the
  /// initial residual; all divided by the caller's scale.
  std::vector<double> history;
  std::vector<double> step_estimates;
  Termination termination = Termination::MaxIterations;
};

/// Restarted GMRES with modified Gram-Schmidt and Givens rotations. Stops
/// once the true residual norm is <= target.
KrylovOutcome gmres(const LinearMap& op, const DenseMatrix& b, DenseMatrix x0,
                    std::size_t restart, std::size_t max_cycles, std::size_t max_steps,
                    double target, double scale);

/// BiCGSTAB stopping on the recursively updated residual.
KrylovOutcome bicgstab(const LinearMap& op, const DenseMatrix& b, DenseMatrix x0,
                       std::size_t max_iters, double target, double scale);

}  // namespace sylv::detail
