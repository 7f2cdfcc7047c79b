#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sylv {

/// Dense real matrix stored column-major. Iterates, residuals and small
/// coefficient matrices all live here.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Takes ownership of `col_major`, which must hold rows*cols entries.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> col_major);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix ones(std::size_t rows, std::size_t cols);
  /// Row-wise literal, handy in tests: from_rows({{1, 2}, {3, 4}}).
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  /// Throws NonFinite if any entry is NaN or infinite.
  void require_finite(const char* what) const;
  bool all_finite() const noexcept;

  void set_zero() noexcept;
  DenseMatrix transpose() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s) noexcept;

  bool operator==(const DenseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);

/// a*b through an optimized GEMM kernel.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
/// Returns a*x for a dense vector x.
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x);

double frobenius_norm(const DenseMatrix& m);
/// Trace inner product sum_ij a_ij b_ij.
double frobenius_dot(const DenseMatrix& a, const DenseMatrix& b);
/// y += alpha * x
void axpy(double alpha, const DenseMatrix& x, DenseMatrix& y);

}  // namespace sylv
