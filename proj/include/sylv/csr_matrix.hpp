#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sylv/dense_matrix.hpp"

namespace sylv {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing in
/// each row; the constructor rejects anything else.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
            std::vector<std::size_t> col_indices, std::vector<double> values);

  /// Duplicate coordinates are summed; input order does not matter.
  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols,
                                 std::vector<Triplet> triplets);
  /// Keeps exact zeros out of the pattern.
  static CsrMatrix from_dense(const DenseMatrix& dense);
  static CsrMatrix identity(std::size_t n);
  /// Tridiagonal n x n with constant sub, main and super diagonals.
  static CsrMatrix tridiagonal(std::size_t n, double sub, double diag, double super);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry lookup by binary search within the row; 0 when absent.
  double at(std::size_t i, std::size_t j) const;

  DenseMatrix to_dense() const;
  CsrMatrix transpose() const;
  std::vector<double> diagonal() const;

  /// this * x
  DenseMatrix multiply(const DenseMatrix& x) const;
  /// x * this, reading this matrix row by row.
  DenseMatrix multiply_right(const DenseMatrix& x) const;

  bool operator==(const CsrMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// alpha*a + beta*b on the union pattern.
CsrMatrix csr_add(double alpha, const CsrMatrix& a, double beta, const CsrMatrix& b);

}  // namespace sylv
