#include "krylov.hpp"

#include <cmath>
#include <limits>

namespace sylv::detail {

namespace {

DenseMatrix residual_of(const LinearMap& op, const DenseMatrix& b, const DenseMatrix& x) {
  DenseMatrix r = b;
  r -= op(x);
  return r;
}

}  // namespace

KrylovOutcome gmres(const LinearMap& op, const DenseMatrix& b, DenseMatrix x0,
                    std::size_t restart, std::size_t max_cycles, std::size_t max_steps,
                    double target, double scale) {
  KrylovOutcome out;
  out.x = std::move(x0);
  DenseMatrix r = residual_of(op, b, out.x);
  double beta = frobenius_norm(r);
  out.history.push_back(beta / scale);

  std::vector<DenseMatrix> basis;
  basis.reserve(restart + 1);
  // Column-major (restart + 1) x restart Hessenberg matrix.
  std::vector<double> h((restart + 1) * restart);
  std::vector<double> cs(restart), sn(restart), g(restart + 1);
  auto hess = [&](std::size_t i, std::size_t j) -> double& { return h[j * (restart + 1) + i]; };

  while (true) {
    if (!std::isfinite(beta)) {
      out.termination = Termination::Breakdown;
      return out;
    }
    if (beta <= target) {
      out.termination = Termination::Converged;
      return out;
    }
    if (out.cycles == max_cycles || out.steps >= max_steps) {
      out.termination = Termination::MaxIterations;
      return out;
    }

    basis.clear();
    basis.push_back((1.0 / beta) * r);
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::size_t k = 0;  // Arnoldi steps taken in this cycle
    while (k < restart && out.steps < max_steps) {
      DenseMatrix w = op(basis[k]);
      for (std::size_t i = 0; i <= k; ++i) {
        hess(i, k) = frobenius_dot(w, basis[i]);
        axpy(-hess(i, k), basis[i], w);
      }
      const double wnorm = frobenius_norm(w);
      hess(k + 1, k) = wnorm;
      for (std::size_t i = 0; i < k; ++i) {
        const double t = cs[i] * hess(i, k) + sn[i] * hess(i + 1, k);
        hess(i + 1, k) = -sn[i] * hess(i, k) + cs[i] * hess(i + 1, k);
        hess(i, k) = t;
      }
      const double denom = std::hypot(hess(k, k), hess(k + 1, k));
      if (denom == 0.0 || !std::isfinite(denom)) {
        out.termination = Termination::Breakdown;
        return out;
      }
      cs[k] = hess(k, k) / denom;
      sn[k] = hess(k + 1, k) / denom;
      hess(k, k) = denom;
      hess(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      ++k;
      ++out.steps;
      const double estimate = std::abs(g[k]);
      out.step_estimates.push_back(estimate / scale);
      // Happy breakdown: the Krylov space is invariant and the solution exact.
      if (estimate <= target || wnorm <= std::numeric_limits<double>::epsilon() * denom) break;
      basis.push_back((1.0 / wnorm) * w);
    }

    std::vector<double> y(k);
    for (std::size_t i = k; i-- > 0;) {
      double s = g[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= hess(i, j) * y[j];
      y[i] = s / hess(i, i);
    }
    for (std::size_t i = 0; i < k; ++i) axpy(y[i], basis[i], out.x);
    ++out.cycles;

    const double previous = beta;
    r = residual_of(op, b, out.x);
    beta = frobenius_norm(r);
    out.history.push_back(beta / scale);
    if (beta > target && !(beta < previous)) {
      out.termination = Termination::Stagnation;
      return out;
    }
  }
}

KrylovOutcome bicgstab(const LinearMap& op, const DenseMatrix& b, DenseMatrix x0,
                       std::size_t max_iters, double target, double scale) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  KrylovOutcome out;
  out.x = std::move(x0);
  DenseMatrix r = residual_of(op, b, out.x);
  const DenseMatrix r_hat = r;
  const double r_hat_norm = frobenius_norm(r_hat);
  double r_norm = r_hat_norm;
  out.history.push_back(r_norm / scale);
  if (r_norm <= target) {
    out.termination = Termination::Converged;
    return out;
  }

  DenseMatrix p(b.rows(), b.cols());
  DenseMatrix v(b.rows(), b.cols());
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  while (out.cycles < max_iters) {
    const double rho_new = frobenius_dot(r_hat, r);
    if (!std::isfinite(rho_new) || std::abs(rho_new) <= eps * eps * r_hat_norm * r_norm) {
      out.termination = Termination::Breakdown;
      return out;
    }
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    // p = r + beta (p - omega v)
    axpy(-omega, v, p);
    p *= beta;
    p += r;
    v = op(p);
    const double rv = frobenius_dot(r_hat, v);
    if (!std::isfinite(rv) || rv == 0.0) {
      out.termination = Termination::Breakdown;
      return out;
    }
    alpha = rho / rv;
    DenseMatrix s = r;
    axpy(-alpha, v, s);
    ++out.cycles;
    const double s_norm = frobenius_norm(s);
    if (s_norm <= target) {
      axpy(alpha, p, out.x);
      out.history.push_back(s_norm / scale);
      out.termination = out.x.all_finite() ? Termination::Converged : Termination::Breakdown;
      return out;
    }
    const DenseMatrix t = op(s);
    const double tt = frobenius_dot(t, t);
    omega = tt > 0.0 ? frobenius_dot(t, s) / tt : 0.0;
    if (!std::isfinite(omega) || std::abs(omega) <= eps * eps) {
      out.termination = Termination::Breakdown;
      out.history.push_back(std::numeric_limits<double>::quiet_NaN());
      return out;
    }
    axpy(alpha, p, out.x);
    axpy(omega, s, out.x);
    r = std::move(s);
    axpy(-omega, t, r);
    r_norm = frobenius_norm(r);
    out.history.push_back(r_norm / scale);
    if (!std::isfinite(r_norm)) {
      out.termination = Termination::Breakdown;
      return out;
    }
    if (r_norm <= target) {
      out.termination = Termination::Converged;
      return out;
    }
  }
  out.termination = Termination::MaxIterations;
  return out;
}

}  // namespace sylv::detail
