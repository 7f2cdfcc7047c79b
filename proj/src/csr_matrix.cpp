#include "sylv/csr_matrix.hpp"

#include <algorithm>
#include <string>

#include "sylv/error.hpp"

namespace sylv {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
                     std::vector<std::size_t> col_indices, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != rows_ + 1 || row_offsets_.front() != 0 ||
      row_offsets_.back() != values_.size() || col_indices_.size() != values_.size()) {
    throw Error(ErrorCode::InvalidArgument, "CsrMatrix: inconsistent offsets/index/value lengths");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_offsets_[i] > row_offsets_[i + 1]) {
      throw Error(ErrorCode::InvalidArgument,
                  "CsrMatrix: row offsets decrease at row " + std::to_string(i));
    }
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (col_indices_[k] >= cols_) {
        throw Error(ErrorCode::InvalidArgument,
                    "CsrMatrix: column index out of range in row " + std::to_string(i));
      }
      if (k > row_offsets_[i] && col_indices_[k] <= col_indices_[k - 1]) {
        throw Error(ErrorCode::InvalidArgument,
                    "CsrMatrix: column indices not strictly increasing in row " +
                        std::to_string(i));
      }
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                   std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) {
      throw Error(ErrorCode::InvalidArgument,
                  "from_triplets: entry (" + std::to_string(t.row) + "," +
                      std::to_string(t.col) + ") outside " + std::to_string(rows) + "x" +
                      std::to_string(cols));
    }
  }
  // Ties broken on value so duplicates are summed in an input-independent order.
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    return a.value < b.value;
  });
  std::vector<std::size_t> offsets(rows + 1, 0);
  std::vector<std::size_t> cols_out;
  std::vector<double> vals;
  cols_out.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size();) {
    const std::size_t r = triplets[k].row;
    const std::size_t c = triplets[k].col;
    double sum = 0.0;
    while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
      sum += triplets[k].value;
      ++k;
    }
    cols_out.push_back(c);
    vals.push_back(sum);
    ++offsets[r + 1];
  }
  for (std::size_t i = 0; i < rows; ++i) offsets[i + 1] += offsets[i];
  return CsrMatrix(rows, cols, std::move(offsets), std::move(cols_out), std::move(vals));
}

CsrMatrix CsrMatrix::from_dense(const DenseMatrix& dense) {
  std::vector<std::size_t> offsets(dense.rows() + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  for (std::size_t i = 0; i < dense.rows(); ++i) {
    for (std::size_t j = 0; j < dense.cols(); ++j) {
      if (dense(i, j) != 0.0) {
        cols.push_back(j);
        vals.push_back(dense(i, j));
      }
    }
    offsets[i + 1] = vals.size();
  }
  return CsrMatrix(dense.rows(), dense.cols(), std::move(offsets), std::move(cols),
                   std::move(vals));
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  std::vector<std::size_t> offsets(n + 1);
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i <= n; ++i) offsets[i] = i;
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return CsrMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
}

CsrMatrix CsrMatrix::tridiagonal(std::size_t n, double sub, double diag, double super) {
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(3 * n);
  vals.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      cols.push_back(i - 1);
      vals.push_back(sub);
    }
    cols.push_back(i);
    vals.push_back(diag);
    if (i + 1 < n) {
      cols.push_back(i + 1);
      vals.push_back(super);
    }
    offsets[i + 1] = vals.size();
  }
  return CsrMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
  const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

DenseMatrix CsrMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      d(i, col_indices_[k]) = values_[k];
  return d;
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<std::size_t> offsets(cols_ + 1, 0);
  for (std::size_t c : col_indices_) ++offsets[c + 1];
  for (std::size_t j = 0; j < cols_; ++j) offsets[j + 1] += offsets[j];
  std::vector<std::size_t> next(offsets.begin(), offsets.end() - 1);
  std::vector<std::size_t> cols(nnz());
  std::vector<double> vals(nnz());
  // Rows are visited in increasing order, so each output row comes out sorted.
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const std::size_t dst = next[col_indices_[k]]++;
      cols[dst] = i;
      vals[dst] = values_[k];
    }
  }
  return CsrMatrix(cols_, rows_, std::move(offsets), std::move(cols), std::move(vals));
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(std::min(rows_, cols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

DenseMatrix CsrMatrix::multiply(const DenseMatrix& x) const {
  if (x.rows() != cols_) {
    throw Error(ErrorCode::DimensionMismatch,
                "CsrMatrix::multiply: " + std::to_string(cols_) + " columns vs " +
                    std::to_string(x.rows()) + " rows");
  }
  DenseMatrix y(rows_, x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const double* xc = x.data() + j * x.rows();
    double* yc = y.data() + j * rows_;
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
        s += values_[k] * xc[col_indices_[k]];
      yc[i] = s;
    }
  }
  return y;
}

DenseMatrix CsrMatrix::multiply_right(const DenseMatrix& x) const {
  if (x.cols() != rows_) {
    throw Error(ErrorCode::DimensionMismatch,
                "CsrMatrix::multiply_right: " + std::to_string(x.cols()) + " columns vs " +
                    std::to_string(rows_) + " rows");
  }
  // (X*B)(:, j) = sum_k B(k, j) X(:, k): row k of B scatters column k of X.
  DenseMatrix y(x.rows(), cols_);
  const std::size_t n = x.rows();
  for (std::size_t k = 0; k < rows_; ++k) {
    const double* xc = x.data() + k * n;
    for (std::size_t p = row_offsets_[k]; p < row_offsets_[k + 1]; ++p) {
      const double v = values_[p];
      double* yc = y.data() + col_indices_[p] * n;
      for (std::size_t i = 0; i < n; ++i) yc[i] += v * xc[i];
    }
  }
  return y;
}

CsrMatrix csr_add(double alpha, const CsrMatrix& a, double beta, const CsrMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "csr_add: shape mismatch");
  }
  std::vector<std::size_t> offsets(a.rows() + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(a.nnz() + b.nnz());
  vals.reserve(a.nnz() + b.nnz());
  const auto ao = a.row_offsets();
  const auto bo = b.row_offsets();
  const auto ac = a.col_indices();
  const auto bc = b.col_indices();
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::size_t p = ao[i];
    std::size_t q = bo[i];
    while (p < ao[i + 1] || q < bo[i + 1]) {
      if (q == bo[i + 1] || (p < ao[i + 1] && ac[p] < bc[q])) {
        cols.push_back(ac[p]);
        vals.push_back(alpha * av[p++]);
      } else if (p == ao[i + 1] || bc[q] < ac[p]) {
        cols.push_back(bc[q]);
        vals.push_back(beta * bv[q++]);
      } else {
        cols.push_back(ac[p]);
        vals.push_back(alpha * av[p++] + beta * bv[q++]);
      }
    }
    offsets[i + 1] = vals.size();
  }
  return CsrMatrix(a.rows(), a.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

}  // namespace sylv
