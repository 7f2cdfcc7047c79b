#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sylv/dense_matrix.hpp"
#include "sylv/matrix.hpp"

namespace sylv {

/// The triple (A, B, C) of AX + XB = C with A n x n, B m x m, C n x m.
class SylvesterProblem {
 public:
  SylvesterProblem(Matrix a, Matrix b, DenseMatrix c);

  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }
  const DenseMatrix& c() const noexcept { return c_; }
  std::size_t n() const noexcept { return c_.rows(); }
  std::size_t m() const noexcept { return c_.cols(); }

 private:
  Matrix a_;
  Matrix b_;
  DenseMatrix c_;
};

/// Column-major stacking; vec(X) is a copy of X's storage.
std::vector<double> vec(const DenseMatrix& x);
DenseMatrix unvec(std::span<const double> v, std::size_t rows, std::size_t cols);

/// A*X + X*B without forming any Kronecker product.
DenseMatrix sylvester_apply(const Matrix& a, const Matrix& b, const DenseMatrix& x);

/// C - A*X - X*B
DenseMatrix sylvester_residual(const SylvesterProblem& p, const DenseMatrix& x);

/// vec(A*X + X*B) where X = unvec(v); matrix-free application of
/// I_m (x) A + B^T (x) I_n.
std::vector<double> kron_apply(const Matrix& a, const Matrix& b, std::span<const double> v);

inline constexpr std::size_t kKronAssembleLimit = 4096;

/// Explicit I_m (x) A + B^T (x) I_n. Only meant for small oracle checks;
/// throws SizeGuard when n*m exceeds kKronAssembleLimit.
DenseMatrix kron_assemble(const Matrix& a, const Matrix& b);

}  // namespace sylv

namespace sylv {

/// Solves a * x = rhs by Gaussian elimination with partial pivoting. Throws
/// Singular when a pivot falls below n * eps * max|a_ij|.
DenseMatrix solve_dense(const DenseMatrix& a, const DenseMatrix& rhs);

}  // namespace sylv
