#include "sylv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sylv/error.hpp"

namespace sylv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

CsrMatrix diagonal_to_csr(const DiagonalMatrix& d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> offsets(n + 1);
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i <= n; ++i) offsets[i] = i;
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return CsrMatrix(n, n, std::move(offsets), std::move(cols), d.entries);
}

CsrMatrix as_csr(const Matrix& m) {
  if (m.is_sparse()) return m.sparse();
  if (m.is_diagonal()) return diagonal_to_csr(m.diag());
  return CsrMatrix::from_dense(m.dense());
}

}  // namespace

std::size_t Matrix::rows() const noexcept {
  return std::visit(overloaded{[](const DenseMatrix& m) { return m.rows(); },
                               [](const CsrMatrix& m) { return m.rows(); },
                               [](const DiagonalMatrix& m) { return m.size(); }},
                    storage_);
}

std::size_t Matrix::cols() const noexcept {
  return std::visit(overloaded{[](const DenseMatrix& m) { return m.cols(); },
                               [](const CsrMatrix& m) { return m.cols(); },
                               [](const DiagonalMatrix& m) { return m.size(); }},
                    storage_);
}

DenseMatrix Matrix::multiply_left(const DenseMatrix& x) const {
  return std::visit(
      overloaded{[&](const DenseMatrix& m) { return matmul(m, x); },
                 [&](const CsrMatrix& m) { return m.multiply(x); },
                 [&](const DiagonalMatrix& d) {
                   if (x.rows() != d.size())
                     throw Error(ErrorCode::DimensionMismatch, "diagonal multiply_left");
                   DenseMatrix y = x;
                   for (std::size_t j = 0; j < y.cols(); ++j)
                     for (std::size_t i = 0; i < y.rows(); ++i) y(i, j) *= d.entries[i];
                   return y;
                 }},
      storage_);
}

DenseMatrix Matrix::multiply_right(const DenseMatrix& x) const {
  return std::visit(
      overloaded{[&](const DenseMatrix& m) { return matmul(x, m); },
                 [&](const CsrMatrix& m) { return m.multiply_right(x); },
                 [&](const DiagonalMatrix& d) {
                   if (x.cols() != d.size())
                     throw Error(ErrorCode::DimensionMismatch, "diagonal multiply_right");
                   DenseMatrix y = x;
                   for (std::size_t j = 0; j < y.cols(); ++j)
                     for (std::size_t i = 0; i < y.rows(); ++i) y(i, j) *= d.entries[j];
                   return y;
                 }},
      storage_);
}

double Matrix::at(std::size_t i, std::size_t j) const {
  return std::visit(overloaded{[&](const DenseMatrix& m) { return m(i, j); },
                               [&](const CsrMatrix& m) { return m.at(i, j); },
                               [&](const DiagonalMatrix& d) {
                                 return i == j ? d.entries[i] : 0.0;
                               }},
                    storage_);
}

std::vector<double> Matrix::diagonal() const {
  return std::visit(overloaded{[](const DenseMatrix& m) {
                                 std::vector<double> d(std::min(m.rows(), m.cols()));
                                 for (std::size_t i = 0; i < d.size(); ++i) d[i] = m(i, i);
                                 return d;
                               },
                               [](const CsrMatrix& m) { return m.diagonal(); },
                               [](const DiagonalMatrix& d) { return d.entries; }},
                    storage_);
}

DenseMatrix Matrix::to_dense() const {
  return std::visit(overloaded{[](const DenseMatrix& m) { return m; },
                               [](const CsrMatrix& m) { return m.to_dense(); },
                               [](const DiagonalMatrix& d) {
                                 DenseMatrix m(d.size(), d.size());
                                 for (std::size_t i = 0; i < d.size(); ++i)
                                   m(i, i) = d.entries[i];
                                 return m;
                               }},
                    storage_);
}

Matrix Matrix::transpose() const {
  return std::visit(overloaded{[](const DenseMatrix& m) { return Matrix(m.transpose()); },
                               [](const CsrMatrix& m) { return Matrix(m.transpose()); },
                               [](const DiagonalMatrix& d) { return Matrix(d); }},
                    storage_);
}

double Matrix::asymmetry() const {
  if (!is_square()) return std::numeric_limits<double>::infinity();
  if (is_diagonal()) return 0.0;
  double max_entry = 0.0;
  double max_diff = 0.0;
  if (is_dense()) {
    const DenseMatrix& m = dense();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        max_entry = std::max(max_entry, std::abs(m(i, j)));
        max_diff = std::max(max_diff, std::abs(m(i, j) - m(j, i)));
      }
    }
  } else {
    const CsrMatrix& m = sparse();
    const CsrMatrix t = m.transpose();
    const CsrMatrix diff = csr_add(1.0, m, -1.0, t);
    for (double v : m.values()) max_entry = std::max(max_entry, std::abs(v));
    for (double v : diff.values()) max_diff = std::max(max_diff, std::abs(v));
  }
  return max_entry == 0.0 ? 0.0 : max_diff / max_entry;
}

Matrix linear_combination(double alpha, const Matrix& a, double beta, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "linear_combination: shape mismatch");
  }
  if (a.is_diagonal() && b.is_diagonal()) {
    DiagonalMatrix d{std::vector<double>(a.rows())};
    for (std::size_t i = 0; i < d.size(); ++i)
      d.entries[i] = alpha * a.diag().entries[i] + beta * b.diag().entries[i];
    return Matrix(std::move(d));
  }
  if (!a.is_dense() && !b.is_dense()) return Matrix(csr_add(alpha, as_csr(a), beta, as_csr(b)));
  DenseMatrix out = a.to_dense();
  out *= alpha;
  axpy(beta, b.to_dense(), out);
  return Matrix(std::move(out));
}

}  // namespace sylv
