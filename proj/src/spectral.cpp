#include "sylv/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sylv/error.hpp"

namespace sylv {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  return Eigen::Map<const Eigen::MatrixXd>(m.data(), static_cast<Eigen::Index>(m.rows()),
                                           static_cast<Eigen::Index>(m.cols()));
}

void require_square(const DenseMatrix& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": not square");
}

EigenRange lanczos_range(const Matrix& m) {
  const std::size_t n = m.rows();
  const std::size_t steps = std::min<std::size_t>(n, 300);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  std::vector<DenseMatrix> q;
  q.reserve(steps + 1);
  DenseMatrix v(n, 1);
  for (double& x : v.values()) x = normal(rng);
  v *= 1.0 / frobenius_norm(v);
  q.push_back(v);
  std::vector<double> alpha, beta;
  for (std::size_t k = 0; k < steps; ++k) {
    DenseMatrix w = m.multiply_left(q[k]);
    const double a = frobenius_dot(w, q[k]);
    alpha.push_back(a);
    // Full reorthogonalization, twice.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : q) axpy(-frobenius_dot(w, qi), qi, w);
    const double b = frobenius_norm(w);
    if (k + 1 == steps || b <= 1e-14 * std::abs(a)) break;
    beta.push_back(b);
    w *= 1.0 / b;
    q.push_back(std::move(w));
  }
  const auto k = static_cast<Eigen::Index>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    t(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "lanczos: tridiagonal eigensolve failed");
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const DenseMatrix& m) {
  require_square(m, "symmetric_eigenvalues");
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "symmetric_eigenvalues: no convergence");
  }
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

EigenRange symmetric_eigen_range(const Matrix& m) {
  if (!m.is_square() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric_eigen_range: need a non-empty square matrix");
  }
  if (m.is_diagonal()) {
    const auto& d = m.diag().entries;
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    return {*lo, *hi};
  }
  if (m.rows() > kDenseEigenLimit) return lanczos_range(m);
  const auto ev = symmetric_eigenvalues(m.to_dense());
  return {ev.front(), ev.back()};
}

double spectral_radius(const DenseMatrix& m) {
  require_square(m, "spectral_radius");
  if (m.rows() > kDenseEigenLimit) {
    throw Error(ErrorCode::SizeGuard, "spectral_radius: order " + std::to_string(m.rows()) +
                                          " exceeds " + std::to_string(kDenseEigenLimit));
  }
  if (m.rows() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(m), false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "spectral_radius: no convergence");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const Matrix& m) {
  if (m.is_diagonal()) {
    double r = 0.0;
    for (double v : m.diag().entries) r = std::max(r, std::abs(v));
    return r;
  }
  return spectral_radius(m.to_dense());
}

double spectral_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(to_eigen(m));
  return svd.singularValues()(0);
}

}  // namespace sylv
