#pragma once

#include <cstddef>
#include <vector>

#include "sylv/dense_matrix.hpp"
#include "sylv/matrix.hpp"

namespace sylv {

struct EigenRange {
  double min = 0.0;
  double max = 0.0;
};

inline constexpr std::size_t kDenseEigenLimit = 2048;

/// Ascending eigenvalues of a symmetric dense matrix.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& m);

/// Extreme eigenvalues of a symmetric matrix: dense solve up to
/// kDenseEigenLimit, Lanczos with full reorthogonalization beyond (an
/// estimate, inner to the true range).
EigenRange symmetric_eigen_range(const Matrix& m);

/// Spectral radius of a general square matrix by dense eigensolve. Throws
/// SizeGuard above kDenseEigenLimit and EigenFailure on non-convergence.
double spectral_radius(const DenseMatrix& m);
double spectral_radius(const Matrix& m);

/// Largest singular value.
double spectral_norm(const DenseMatrix& m);

}  // namespace sylv
