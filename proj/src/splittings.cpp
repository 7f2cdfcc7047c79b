#include "sylv/splittings.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sylv/error.hpp"

namespace sylv {

const char* to_string(SplittingSource s) noexcept {
  switch (s) {
    case SplittingSource::HS: return "hs";
    case SplittingSource::Jacobi: return "jacobi";
    case SplittingSource::Custom: return "custom";
  }
  return "unknown";
}

SplittingPair hs_split(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "hs_split: matrix not square");
  Matrix h = linear_combination(0.5, a, 0.5, a.transpose());
  Matrix n = linear_combination(1.0, h, -1.0, a);
  return {std::move(h), std::move(n), SplittingSource::HS};
}

SplittingPair jacobi_split(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "jacobi_split: matrix not square");
  DiagonalMatrix d{a.diagonal()};
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.entries[i] == 0.0) {
      throw Error(ErrorCode::Singular,
                  "jacobi_split: zero diagonal entry at index " + std::to_string(i));
    }
  }
  Matrix m(std::move(d));
  Matrix n = linear_combination(1.0, m, -1.0, a);
  return {std::move(m), std::move(n), SplittingSource::Jacobi};
}

SplittingPair custom_split(Matrix m_part, Matrix n_part) {
  if (!m_part.is_square() || m_part.rows() != n_part.rows() ||
      m_part.cols() != n_part.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "custom_split: parts must be square and conformant");
  }
  return {std::move(m_part), std::move(n_part), SplittingSource::Custom};
}

namespace {

// Envelope (profile) Cholesky: row i of L is stored from its first structural
// nonzero column to the diagonal. Fill never leaves the envelope, so banded
// sparse matrices factor in O(n * bandwidth^2) while dense input degrades to
// the ordinary algorithm.
bool envelope_cholesky_succeeds(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> first(n);
  for (std::size_t i = 0; i < n; ++i) first[i] = i;
  if (m.is_sparse()) {
    const CsrMatrix& s = m.sparse();
    const auto off = s.row_offsets();
    const auto col = s.col_indices();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
        const std::size_t j = col[k];
        // Symmetric pattern: (i, j) with j < i extends row i, with j > i row j.
        if (j < i) first[i] = std::min(first[i], j);
        else first[j] = std::min(first[j], i);
      }
    }
  } else if (m.is_dense()) {
    const DenseMatrix& d = m.dense();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (d(i, j) != 0.0 || d(j, i) != 0.0) {
          first[i] = j;
          break;
        }
      }
    }
  }

  std::vector<std::size_t> start(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) start[i + 1] = start[i] + (i - first[i] + 1);
  std::vector<double> l(start[n], 0.0);
  auto entry = [&](std::size_t i, std::size_t j) -> double& {
    return l[start[i] + (j - first[i])];
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = first[i]; j <= i; ++j) entry(i, j) = m.at(i, j);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = first[i]; j <= i; ++j) {
      double s = entry(i, j);
      for (std::size_t k = std::max(first[i], first[j]); k < j; ++k) s -= entry(i, k) * entry(j, k);
      if (j < i) {
        entry(i, j) = s / entry(j, j);
      } else {
        if (!(s > 0.0) || !std::isfinite(s)) return false;
        entry(i, i) = std::sqrt(s);
      }
    }
  }
  return true;
}

}  // namespace

bool validate_spd(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  if (m.is_diagonal()) {
    const auto& d = m.diag().entries;
    return std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0 && std::isfinite(v); });
  }
  if (m.asymmetry() > tol) return false;
  return envelope_cholesky_succeeds(m);
}

}  // namespace sylv
