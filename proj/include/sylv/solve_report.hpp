#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sylv/dense_matrix.hpp"

namespace sylv {

enum class Termination { Converged, MaxIterations, Diverged, Breakdown, Stagnation };

const char* to_string(Termination t) noexcept;

/// Iteration accounting shared by every solver. `residual_history[k]` is the
/// relative Frobenius residual ||C - A X_k - X_k B|| / ||C|| after outer step k,
/// so entry 0 belongs to the starting guess.
struct SolveReport {
  std::size_t outer_iters = 0;
  /// Cumulative inner iterations; empty for methods without an inner level.
  std::optional<std::size_t> total_inner_iters;
  std::vector<double> residual_history;
  bool converged = false;
  Termination termination = Termination::MaxIterations;
  double wall_seconds = 0.0;
  /// Per Arnoldi step residual estimates (GMRES only).
  std::vector<double> step_history;
  std::string detail;

  double final_residual() const {
    return residual_history.empty() ? 0.0 : residual_history.back();
  }
};

struct SolveResult {
  DenseMatrix x;
  SolveReport report;
};

}  // namespace sylv
