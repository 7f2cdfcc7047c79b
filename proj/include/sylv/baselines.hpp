#pragma once

#include <cstddef>

#include "sylv/inner_solvers.hpp"
#include "sylv/la.hpp"
#include "sylv/solve_report.hpp"

namespace sylv {

struct KrylovConfig {
  double tol = 1e-8;
  /// GMRES cycle length.
  std::size_t restart = 10;
  /// Restart cycles for GMRES, iterations for BiCGSTAB.
  std::size_t max_iters = 5000;

  void validate() const;
};

struct HssConfig {
  /// Shift; a non-positive value selects sqrt(lambda_min * lambda_max) of
  /// the Kronecker Hermitian part, estimated from H_A and H_B.
  double alpha = 0.0;
  InnerConfig inner{};
  std::size_t max_outer = 5000;
  double outer_tol = 1e-8;
  double divergence_threshold = 1e8;

  void validate() const;
};

/// Default HSS shift sqrt((lmin(H_A)+lmin(H_B)) * (lmax(H_A)+lmax(H_B))).
double hss_default_alpha(const SylvesterProblem& p);

/// Hermitian/skew-Hermitian splitting iteration for AX + XB = C. The
/// Hermitian half-step runs CG, the skew half-step runs GMRES on the shifted
/// skew operator (closed form when A and B are symmetric). Inner iterations of
/// both half-steps are accumulated in total_inner_iters.
SolveResult hss_solve(const SylvesterProblem& p, const HssConfig& cfg);

/// Restarted GMRES on X -> AX + XB from X = 0. outer_iters counts cycles,
/// total_inner_iters Arnoldi steps; residual_history has one entry per cycle
/// and step_history one per Arnoldi step.
SolveResult gmres_kron_solve(const SylvesterProblem& p, const KrylovConfig& cfg);

/// BiCGSTAB on X -> AX + XB from X = 0. A vanishing recurrence scalar or a
/// non-finite iterate ends the run with Termination::Breakdown.
SolveResult bicgstab_kron_solve(const SylvesterProblem& p, const KrylovConfig& cfg);

}  // namespace sylv
