#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "sylv/csr_matrix.hpp"
#include "sylv/dense_matrix.hpp"

namespace sylv {

/// Square diagonal matrix kept as its diagonal only.
struct DiagonalMatrix {
  std::vector<double> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool operator==(const DiagonalMatrix&) const = default;
};

/// A coefficient matrix in one of three storage kinds. Sylvester operators
/// only ever need left and right products with dense blocks, so those are
/// the core operations; everything else converts.
class Matrix {
 public:
  using Storage = std::variant<DenseMatrix, CsrMatrix, DiagonalMatrix>;

  Matrix() = default;
  Matrix(DenseMatrix m) : storage_(std::move(m)) {}
  Matrix(CsrMatrix m) : storage_(std::move(m)) {}
  Matrix(DiagonalMatrix m) : storage_(std::move(m)) {}

  std::size_t rows() const noexcept;
  std::size_t cols() const noexcept;
  bool is_square() const noexcept { return rows() == cols(); }

  bool is_dense() const noexcept { return std::holds_alternative<DenseMatrix>(storage_); }
  bool is_sparse() const noexcept { return std::holds_alternative<CsrMatrix>(storage_); }
  bool is_diagonal() const noexcept { return std::holds_alternative<DiagonalMatrix>(storage_); }

  const DenseMatrix& dense() const { return std::get<DenseMatrix>(storage_); }
  const CsrMatrix& sparse() const { return std::get<CsrMatrix>(storage_); }
  const DiagonalMatrix& diag() const { return std::get<DiagonalMatrix>(storage_); }
  const Storage& storage() const noexcept { return storage_; }

  /// this * x
  DenseMatrix multiply_left(const DenseMatrix& x) const;
  /// x * this
  DenseMatrix multiply_right(const DenseMatrix& x) const;

  double at(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal() const;
  DenseMatrix to_dense() const;
  Matrix transpose() const;

  /// Largest |a_ij - a_ji| relative to the largest |a_ij|.
  double asymmetry() const;

 private:
  Storage storage_{DenseMatrix{}};
};

/// alpha*a + beta*b. Keeps the cheapest storage that can represent the
/// result: diagonal+diagonal stays diagonal, sparse+sparse or sparse+diagonal
/// stays sparse, anything involving a dense operand becomes dense.
Matrix linear_combination(double alpha, const Matrix& a, double beta, const Matrix& b);

}  // namespace sylv
