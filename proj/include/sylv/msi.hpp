#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "sylv/inner_solvers.hpp"
#include "sylv/la.hpp"
#include "sylv/solve_report.hpp"
#include "sylv/splittings.hpp"

namespace sylv {

enum class MsiVariant { General, HsJacobi };

struct MsiConfig {
  double outer_tol = 1e-8;
  InnerConfig inner{};
  std::size_t max_outer = 5000;
  MsiVariant variant = MsiVariant::HsJacobi;
  /// Relative residual above which the run is abandoned as diverged.
  double divergence_threshold = 1e8;
  /// Starting iterate; zero when unset.
  std::optional<DenseMatrix> x0;
  /// Called after every sweep with (step, U^(k), X^(k)).
  std::function<void(std::size_t, const DenseMatrix&, const DenseMatrix&)> on_sweep;

  void validate() const;
};

/// Multiplicative splitting iteration with A = M1 - N1 = M2 - N2 (pairs
/// `a1`, `a2`) and B = P1 - Q1 = P2 - Q2 (pairs `b1`, `b2`). Each sweep
/// solves
///   M1 U + U P1 = N1 X + X Q1 + C
///   M2 X + X P2 = N2 U + U Q2 + C
/// by conjugate gradients, or in closed form when both parts of a half-step
/// are diagonal. Every M part must be symmetric positive definite.
///
/// Divergence and the outer iteration cap are reported through the returned
/// report; inner solver failures throw with the outer step in the message.
SolveResult msi_solve_general(const SylvesterProblem& p, const SplittingPair& a1,
                              const SplittingPair& b1, const SplittingPair& a2,
                              const SplittingPair& b2, const MsiConfig& cfg);

/// HS splittings in the first half-step, Jacobi splittings in the second.
/// Requires strictly positive diagonals of A and B.
SolveResult msi_solve_hs_jacobi(const SylvesterProblem& p, const MsiConfig& cfg);

}  // namespace sylv
