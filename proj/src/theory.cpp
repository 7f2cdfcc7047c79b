#include "sylv/theory.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sylv/error.hpp"
#include "sylv/la.hpp"
#include "sylv/spectral.hpp"

namespace sylv {

namespace {

constexpr double kSymmetryTol = 1e-12;

// Power iteration on N^T N, scaled up by a fixed factor.
double norm2_estimate(const Matrix& m) {
  const std::size_t n = m.rows();
  std::mt19937_64 rng(0xb0);
  std::normal_distribution<double> normal;
  DenseMatrix v(n, 1);
  for (double& x : v.values()) x = normal(rng);
  const Matrix mt = m.transpose();
  double sigma = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double vn = frobenius_norm(v);
    if (vn == 0.0) return 0.0;
    v *= 1.0 / vn;
    DenseMatrix w = mt.multiply_left(m.multiply_left(v));
    const double next = std::sqrt(frobenius_norm(w));
    const bool settled = std::abs(next - sigma) <= 1e-10 * next;
    sigma = next;
    v = std::move(w);
    if (settled) break;
  }
  return 1.01 * sigma;
}

EigenRange symmetric_part_range(const Matrix& m, const char* name, const SpectraOptions& opts) {
  if (m.asymmetry() > kSymmetryTol) {
    throw Error(ErrorCode::InvalidArgument, std::string("splitting_spectra: ") + name +
                                                " part is not symmetric");
  }
  if (m.rows() > kDenseEigenLimit && !opts.large_fallback) {
    throw Error(ErrorCode::SizeGuard, std::string("splitting_spectra: ") + name +
                                          " exceeds the dense eigensolver limit");
  }
  return symmetric_eigen_range(m);
}

double max_abs_eigenvalue(const Matrix& m, const SpectraOptions& opts) {
  if (m.rows() <= kDenseEigenLimit || m.is_diagonal()) return spectral_radius(m);
  if (!opts.large_fallback) {
    throw Error(ErrorCode::SizeGuard, "splitting_spectra: N part exceeds the dense eigensolver limit");
  }
  return norm2_estimate(m);
}

}  // namespace

SplittingSpectra splitting_spectra(const SplittingPair& a, const SplittingPair& b,
                                   const SpectraOptions& opts) {
  const EigenRange ma = symmetric_part_range(a.m_part, "M", opts);
  const EigenRange mb = symmetric_part_range(b.m_part, "P", opts);
  SplittingSpectra s;
  s.lambda_min_m = ma.min;
  s.lambda_max_m = ma.max;
  s.lambda_min_p = mb.min;
  s.lambda_max_p = mb.max;
  s.max_abs_lambda_n = max_abs_eigenvalue(a.n_part, opts);
  s.max_abs_lambda_q = max_abs_eigenvalue(b.n_part, opts);
  return s;
}

double theta(const SplittingSpectra& s) {
  const double lo = s.lambda_min_m + s.lambda_min_p;
  if (!(lo > 0.0)) {
    throw Error(ErrorCode::NotSpd, "theta: lambda_min(M) + lambda_min(P) = " + std::to_string(lo) +
                                       " is not positive");
  }
  return std::sqrt((s.lambda_max_m + s.lambda_max_p) / lo);
}

double varrho(const SplittingSpectra& s) {
  const double t = theta(s);
  return t * t * t * (s.max_abs_lambda_n + s.max_abs_lambda_q) /
         (s.lambda_min_m + s.lambda_min_p);
}

BoundReport msi_bound_check(const SplittingPair& a1, const SplittingPair& b1,
                            const SplittingPair& a2, const SplittingPair& b2,
                            const SpectraOptions& opts) {
  const SplittingSpectra s1 = splitting_spectra(a1, b1, opts);
  const SplittingSpectra s2 = splitting_spectra(a2, b2, opts);
  BoundReport r;
  r.theta = {theta(s1), theta(s2)};
  r.varrho = {varrho(s1), varrho(s2)};
  r.product = r.varrho[0] * r.varrho[1];
  r.predicts_convergence = r.product < 1.0;
  return r;
}

double weighted_operator_norm(const DenseMatrix& m_full, const DenseMatrix& n_full) {
  if (!m_full.is_square() || m_full.rows() != n_full.rows() || m_full.cols() != n_full.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "weighted_operator_norm: shape mismatch");
  }
  if (m_full.rows() > kKronAssembleLimit) {
    throw Error(ErrorCode::SizeGuard, "weighted_operator_norm: beyond oracle scale");
  }
  if (Matrix(m_full).asymmetry() > kSymmetryTol) {
    throw Error(ErrorCode::NotSpd, "weighted_operator_norm: M is not symmetric");
  }
  const auto k = static_cast<Eigen::Index>(m_full.rows());
  const Eigen::Map<const Eigen::MatrixXd> m(m_full.data(), k, k);
  const Eigen::Map<const Eigen::MatrixXd> nm(n_full.data(), k, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "weighted_operator_norm: eigensolve failed");
  if (!(es.eigenvalues().minCoeff() > 0.0)) {
    throw Error(ErrorCode::NotSpd, "weighted_operator_norm: M is not positive definite");
  }
  // M^{1/2} (M^-1 N) M^{-1/2} = M^{-1/2} N M^{-1/2}
  const Eigen::MatrixXd& v = es.eigenvectors();
  const Eigen::MatrixXd inv_sqrt =
      v * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
  const Eigen::MatrixXd w = inv_sqrt * nm * inv_sqrt;
  DenseMatrix wd(m_full.rows(), m_full.cols(), std::vector<double>(w.data(), w.data() + w.size()));
  return spectral_norm(wd);
}

DenseMatrix iteration_matrix(const SplittingPair& a1, const SplittingPair& b1,
                             const SplittingPair& a2, const SplittingPair& b2) {
  const DenseMatrix m1 = kron_assemble(a1.m_part, b1.m_part);
  const DenseMatrix n1 = kron_assemble(a1.n_part, b1.n_part);
  const DenseMatrix m2 = kron_assemble(a2.m_part, b2.m_part);
  const DenseMatrix n2 = kron_assemble(a2.n_part, b2.n_part);
  return solve_dense(m2, matmul(n2, solve_dense(m1, n1)));
}

double iteration_matrix_rho(const SplittingPair& a1, const SplittingPair& b1,
                            const SplittingPair& a2, const SplittingPair& b2, std::size_t n,
                            std::size_t m) {
  if (a1.size() != n || a2.size() != n || b1.size() != m || b2.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "iteration_matrix_rho: splitting sizes disagree with (n, m)");
  }
  if (n * m > kKronAssembleLimit) {
    throw Error(ErrorCode::SizeGuard, "iteration_matrix_rho: n*m beyond oracle scale");
  }
  return spectral_radius(iteration_matrix(a1, b1, a2, b2));
}

}  // namespace sylv
