#pragma once

// Random instances and brute-force oracles shared by the test binaries.
// The oracles deliberately avoid library code paths: Kronecker matrices are
// built entry by entry and linear systems are solved by textbook elimination.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "sylv/dense_matrix.hpp"
#include "sylv/la.hpp"
#include "sylv/matrix.hpp"

namespace testing {

using sylv::DenseMatrix;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline DenseMatrix random_dense(Rng& rng, std::size_t rows, std::size_t cols) {
  DenseMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = rng.uniform();
  return m;
}

inline DenseMatrix random_symmetric(Rng& rng, std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) m(i, j) = m(j, i) = rng.uniform();
  return m;
}

inline DenseMatrix random_skew(Rng& rng, std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      m(i, j) = rng.uniform();
      m(j, i) = -m(i, j);
    }
  return m;
}

// G^T G + shift*I, symmetric positive definite.
inline DenseMatrix random_spd(Rng& rng, std::size_t n, double shift = 0.5) {
  const DenseMatrix g = random_dense(rng, n, n);
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += g(k, i) * g(k, j);
      m(i, j) = s + (i == j ? shift : 0.0);
    }
  return m;
}

// Nonsymmetric, strictly diagonally dominant with positive diagonal; its
// symmetric part is then diagonally dominant too, hence positive definite.
inline DenseMatrix random_dominant(Rng& rng, std::size_t n, double skew = 1.0) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      m(i, j) = rng.uniform() * (j > i ? skew : 1.0);
      row += std::abs(m(i, j));
    }
    m(i, i) = row + 1.0 + rng.uniform(0.0, 1.0);
  }
  // Column sums bound the transpose's off-diagonal mass as well.
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) col += std::abs(m(i, j));
    m(j, j) = std::max(m(j, j), col + 1.0);
  }
  return m;
}

inline DenseMatrix naive_matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Entry-wise I (x) A + B^T (x) I with column-major vec.
inline DenseMatrix brute_kron(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.rows(), m = b.rows(), nm = n * m;
  DenseMatrix k(nm, nm);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = j * n + i;
      for (std::size_t q = 0; q < n; ++q) k(row, j * n + q) += a(i, q);
      for (std::size_t l = 0; l < m; ++l) k(row, l * n + i) += b(l, j);
    }
  return k;
}

// Gauss-Jordan with partial pivoting on a copy; single right-hand side.
inline std::vector<double> brute_solve(DenseMatrix a, std::vector<double> rhs) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= a(i, i);
  return rhs;
}

inline DenseMatrix brute_sylvester(const DenseMatrix& a, const DenseMatrix& b,
                                   const DenseMatrix& c) {
  const std::vector<double> rhs(c.values().begin(), c.values().end());
  return DenseMatrix(c.rows(), c.cols(), brute_solve(brute_kron(a, b), rhs));
}

inline double rel_diff(const DenseMatrix& x, const DenseMatrix& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    num += (x.data()[k] - y.data()[k]) * (x.data()[k] - y.data()[k]);
    den += y.data()[k] * y.data()[k];
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

inline double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y) {
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    d = std::max(d, std::abs(x.data()[k] - y.data()[k]));
  return d;
}

// Random well-posed problem with dominant nonsymmetric coefficients.
inline sylv::SylvesterProblem random_problem(Rng& rng, std::size_t n, std::size_t m,
                                             double skew = 1.0) {
  return sylv::SylvesterProblem(random_dominant(rng, n, skew), random_dominant(rng, m, skew),
                                random_dense(rng, n, m));
}

}  // namespace testing
