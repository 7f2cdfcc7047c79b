#pragma once

#include <array>
#include <cstddef>

#include "sylv/dense_matrix.hpp"
#include "sylv/splittings.hpp"

namespace sylv {

/// Spectral data of one Kronecker-level splitting
/// M = I (x) M_A + M_B^T (x) I, N = I (x) N_A + N_B^T (x) I, computed from the
/// factors only.
struct SplittingSpectra {
  double lambda_min_m = 0.0;
  double lambda_max_m = 0.0;
  double lambda_min_p = 0.0;
  double lambda_max_p = 0.0;
  double max_abs_lambda_n = 0.0;
  double max_abs_lambda_q = 0.0;
};

struct SpectraOptions {
  /// Above the dense eigensolver limit, estimate M extremes by Lanczos and
  /// replace max|lambda(N)| by a power-iteration estimate of ||N||_2, which
  /// dominates it. Off by default: large inputs throw SizeGuard.
  bool large_fallback = false;
};

/// `a` splits the left coefficient (M, N); `b` the right one (P, Q).
SplittingSpectra splitting_spectra(const SplittingPair& a, const SplittingPair& b,
                                   const SpectraOptions& opts = {});

/// sqrt((lmax(M) + lmax(P)) / (lmin(M) + lmin(P))). Throws NotSpd when the
/// denominator is not positive.
double theta(const SplittingSpectra& s);

/// theta^3 (max|lambda(N)| + max|lambda(Q)|) / (lmin(M) + lmin(P))
double varrho(const SplittingSpectra& s);

/// Sufficient convergence certificate for the two-splitting iteration. The
/// prediction is only valid when M1 A^-1 and M2 A^-1 are Hermitian and
/// commute; that hypothesis is not checked.
struct BoundReport {
  std::array<double, 2> theta{};
  std::array<double, 2> varrho{};
  double product = 0.0;
  bool predicts_convergence = false;
};

inline constexpr const char* kBoundValidity = "valid under the commutativity hypothesis";

BoundReport msi_bound_check(const SplittingPair& a1, const SplittingPair& b1,
                            const SplittingPair& a2, const SplittingPair& b2,
                            const SpectraOptions& opts = {});

/// ||M^{1/2} (M^-1 N) M^{-1/2}||_2 for symmetric positive definite M, via a
/// spectral decomposition of M. Throws NotSpd otherwise.
double weighted_operator_norm(const DenseMatrix& m_full, const DenseMatrix& n_full);

/// Explicit T = M2^-1 N2 M1^-1 N1 from Kronecker assemblies (oracle scale).
DenseMatrix iteration_matrix(const SplittingPair& a1, const SplittingPair& b1,
                             const SplittingPair& a2, const SplittingPair& b2);

/// rho(T) for the matrix above.
double iteration_matrix_rho(const SplittingPair& a1, const SplittingPair& b1,
                            const SplittingPair& a2, const SplittingPair& b2, std::size_t n,
                            std::size_t m);

}  // namespace sylv
