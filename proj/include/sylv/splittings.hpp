#pragma once

#include "sylv/matrix.hpp"

namespace sylv {

enum class SplittingSource { HS, Jacobi, Custom };

const char* to_string(SplittingSource s) noexcept;

/// A = M - N with M the part inverted by the iteration. M is required to be
/// symmetric positive definite by the solvers that consume the pair; the
/// constructors here only guarantee the reconstruction identity.
struct SplittingPair {
  Matrix m_part;
  Matrix n_part;
  SplittingSource source = SplittingSource::Custom;

  /// Diagonal M parts let the Sylvester half-step be solved in closed form.
  bool has_diagonal_m() const noexcept { return m_part.is_diagonal(); }
  std::size_t size() const noexcept { return m_part.rows(); }
};

/// M = (A + A^T)/2, N = M - A = -(A - A^T)/2.
SplittingPair hs_split(const Matrix& a);

/// M = diag(A) in diagonal storage, N = M - A. Throws Singular on a zero
/// diagonal entry.
SplittingPair jacobi_split(const Matrix& a);

/// Wraps user-supplied parts; N is stored as given and must satisfy M - N = A
/// for whatever A the caller has in mind.
SplittingPair custom_split(Matrix m_part, Matrix n_part);

/// True iff `m` is symmetric to within `tol` (relative to its largest entry)
/// and a Cholesky factorization runs with strictly positive pivots. Never
/// throws on a non-SPD input.
bool validate_spd(const Matrix& m, double tol = 1e-12);

}  // namespace sylv
