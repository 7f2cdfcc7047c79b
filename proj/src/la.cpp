#include "sylv/la.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sylv/error.hpp"

namespace sylv {

SylvesterProblem::SylvesterProblem(Matrix a, Matrix b, DenseMatrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (!a_.is_square() || !b_.is_square()) {
    throw Error(ErrorCode::DimensionMismatch, "SylvesterProblem: A and B must be square");
  }
  if (c_.rows() != a_.rows() || c_.cols() != b_.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "SylvesterProblem: C is " + std::to_string(c_.rows()) + "x" +
                    std::to_string(c_.cols()) + ", expected " + std::to_string(a_.rows()) +
                    "x" + std::to_string(b_.rows()));
  }
}

std::vector<double> vec(const DenseMatrix& x) {
  return std::vector<double>(x.values().begin(), x.values().end());
}

DenseMatrix unvec(std::span<const double> v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "unvec: length " + std::to_string(v.size()) + " for " + std::to_string(rows) +
                    "x" + std::to_string(cols));
  }
  return DenseMatrix(rows, cols, std::vector<double>(v.begin(), v.end()));
}

DenseMatrix sylvester_apply(const Matrix& a, const Matrix& b, const DenseMatrix& x) {
  if (x.rows() != a.rows() || x.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "sylvester_apply: X is " + std::to_string(x.rows()) + "x" +
                    std::to_string(x.cols()) + ", expected " + std::to_string(a.rows()) + "x" +
                    std::to_string(b.rows()));
  }
  DenseMatrix y = a.multiply_left(x);
  y += b.multiply_right(x);
  return y;
}

DenseMatrix sylvester_residual(const SylvesterProblem& p, const DenseMatrix& x) {
  DenseMatrix r = p.c();
  r -= sylvester_apply(p.a(), p.b(), x);
  return r;
}

std::vector<double> kron_apply(const Matrix& a, const Matrix& b, std::span<const double> v) {
  return vec(sylvester_apply(a, b, unvec(v, a.rows(), b.rows())));
}

DenseMatrix kron_assemble(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  const std::size_t m = b.rows();
  if (n * m > kKronAssembleLimit) {
    throw Error(ErrorCode::SizeGuard, "kron_assemble: n*m = " + std::to_string(n * m) +
                                          " exceeds " + std::to_string(kKronAssembleLimit));
  }
  const DenseMatrix ad = a.to_dense();
  const DenseMatrix bd = b.to_dense();
  DenseMatrix k(n * m, n * m);
  // I_m (x) A: copies of A on the diagonal blocks.
  for (std::size_t q = 0; q < m; ++q)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) k(q * n + i, q * n + j) += ad(i, j);
  // B^T (x) I_n: block (p, q) is B(q, p) * I_n.
  for (std::size_t q = 0; q < m; ++q)
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t i = 0; i < n; ++i) k(p * n + i, q * n + i) += bd(q, p);
  return k;
}

}  // namespace sylv

namespace sylv {

DenseMatrix solve_dense(const DenseMatrix& a, const DenseMatrix& rhs) {
  if (!a.is_square() || rhs.rows() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_dense: shape mismatch");
  }
  const std::size_t n = a.rows();
  DenseMatrix lu = a;
  DenseMatrix x = rhs;
  double scale = 0.0;
  for (double v : lu.values()) scale = std::max(scale, std::abs(v));
  const double threshold =
      static_cast<double>(std::max<std::size_t>(n, 1)) * std::numeric_limits<double>::epsilon() * scale;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (!(std::abs(lu(piv, k)) > threshold)) {
      throw Error(ErrorCode::Singular,
                  "solve_dense: matrix is singular to working precision at column " +
                      std::to_string(k));
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    const double pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) lu(i, k) /= pivot;
    for (std::size_t j = k + 1; j < n; ++j) {
      const double ukj = lu(k, j);
      if (ukj == 0.0) continue;
      for (std::size_t i = k + 1; i < n; ++i) lu(i, j) -= lu(i, k) * ukj;
    }
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const double xk = x(k, c);
      if (xk == 0.0) continue;
      for (std::size_t i = k + 1; i < n; ++i) x(i, c) -= lu(i, k) * xk;
    }
  }
  for (std::size_t c = 0; c < x.cols(); ++c) {
    for (std::size_t k = n; k-- > 0;) {
      double s = x(k, c);
      for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x(j, c);
      x(k, c) = s / lu(k, k);
    }
  }
  return x;
}

}  // namespace sylv
