#include "sylv/baselines.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "krylov.hpp"
#include "sylv/error.hpp"
#include "sylv/spectral.hpp"
#include "sylv/splittings.hpp"

namespace sylv {

void KrylovConfig::validate() const {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "KrylovConfig: tol must lie in (0, 1)");
  if (restart < 1) throw Error(ErrorCode::InvalidArgument, "KrylovConfig: restart must be >= 1");
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "KrylovConfig: max_iters must be >= 1");
}

void HssConfig::validate() const {
  if (!(outer_tol > 0.0 && outer_tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "HssConfig: outer_tol must lie in (0, 1)");
  }
  if (max_outer < 1) throw Error(ErrorCode::InvalidArgument, "HssConfig: max_outer must be >= 1");
  if (!std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "HssConfig: alpha must be finite");
  inner.validate();
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double rhs_scale(const SylvesterProblem& p) {
  const double c = frobenius_norm(p.c());
  return c > 0.0 ? c : 1.0;
}

Matrix identity_like(const Matrix& m) {
  if (m.is_dense()) return Matrix(DenseMatrix::identity(m.rows()));
  if (m.is_sparse()) return Matrix(CsrMatrix::identity(m.rows()));
  return Matrix(DiagonalMatrix{std::vector<double>(m.rows(), 1.0)});
}

Matrix shifted(const Matrix& m, double shift) {
  return linear_combination(1.0, m, shift, identity_like(m));
}

void finish(SolveReport& rep, const detail::KrylovOutcome& k, double tol) {
  rep.outer_iters = k.cycles;
  rep.residual_history = k.history;
  rep.step_history = k.step_estimates;
  rep.termination = k.termination;
  rep.converged = k.termination == Termination::Converged && rep.final_residual() <= tol;
  if (k.termination == Termination::Converged && !rep.converged) {
    rep.termination = Termination::MaxIterations;
  }
}

}  // namespace

double hss_default_alpha(const SylvesterProblem& p) {
  const EigenRange ha = symmetric_eigen_range(hs_split(p.a()).m_part);
  const EigenRange hb = symmetric_eigen_range(hs_split(p.b()).m_part);
  const double lo = ha.min + hb.min;
  const double hi = ha.max + hb.max;
  if (!(lo > 0.0)) {
    throw Error(ErrorCode::NotSpd, "hss_default_alpha: Hermitian part is not positive definite");
  }
  return std::sqrt(lo * hi);
}

SolveResult hss_solve(const SylvesterProblem& p, const HssConfig& cfg) {
  const auto start = Clock::now();
  cfg.validate();
  const double alpha = cfg.alpha > 0.0 ? cfg.alpha : hss_default_alpha(p);

  const SplittingPair sa = hs_split(p.a());
  const SplittingPair sb = hs_split(p.b());
  const Matrix& ha = sa.m_part;
  const Matrix& hb = sb.m_part;
  // Skew parts S = A - H.
  const Matrix skew_a = linear_combination(1.0, p.a(), -1.0, ha);
  const Matrix skew_b = linear_combination(1.0, p.b(), -1.0, hb);
  const bool symmetric = p.a().asymmetry() == 0.0 && p.b().asymmetry() == 0.0;
  const Matrix ha_shift = shifted(ha, 0.5 * alpha);
  const Matrix hb_shift = shifted(hb, 0.5 * alpha);
  if (!validate_spd(ha_shift) || !validate_spd(hb_shift)) {
    throw Error(ErrorCode::NotSpd, "hss_solve: shifted Hermitian parts are not positive definite");
  }

  const double scale = rhs_scale(p);
  SolveResult out{DenseMatrix(p.n(), p.m()), {}};
  SolveReport& rep = out.report;
  rep.total_inner_iters = 0;
  rep.residual_history.push_back(frobenius_norm(sylvester_residual(p, out.x)) / scale);

  const detail::LinearMap skew_op = [&](const DenseMatrix& y) {
    DenseMatrix z = sylvester_apply(skew_a, skew_b, y);
    axpy(alpha, y, z);
    return z;
  };
  const std::size_t inner_restart = std::min<std::size_t>(cfg.inner.max_iters, 50);

  while (rep.residual_history.back() > cfg.outer_tol) {
    if (rep.outer_iters == cfg.max_outer) {
      rep.termination = Termination::MaxIterations;
      break;
    }
    const std::size_t step = rep.outer_iters + 1;
    try {
      // (alpha I + H) x' = (alpha I - S) x + c
      DenseMatrix rhs = out.x;
      rhs *= alpha;
      rhs -= sylvester_apply(skew_a, skew_b, out.x);
      rhs += p.c();
      InnerResult half = cg_sylvester_solve(ha_shift, hb_shift, rhs, cfg.inner, out.x);
      *rep.total_inner_iters += half.iters;

      // (alpha I + S) x'' = (alpha I - H) x' + c
      rhs = half.x;
      rhs *= alpha;
      rhs -= sylvester_apply(ha, hb, half.x);
      rhs += p.c();
      if (symmetric) {
        rhs *= 1.0 / alpha;
        out.x = std::move(rhs);
      } else {
        DenseMatrix r0 = rhs;
        r0 -= skew_op(half.x);
        const double target = cfg.inner.tol * frobenius_norm(r0);
        detail::KrylovOutcome k = detail::gmres(skew_op, rhs, std::move(half.x), inner_restart,
                                                cfg.inner.max_iters, cfg.inner.max_iters,
                                                target, 1.0);
        if (k.termination == Termination::Breakdown) {
          throw Error(ErrorCode::NonFinite, "hss_solve: inner GMRES broke down");
        }
        *rep.total_inner_iters += k.steps;
        out.x = std::move(k.x);
      }
    } catch (const Error& e) {
      throw Error(e.code(), "hss outer step " + std::to_string(step) + ": " + e.what());
    }
    rep.outer_iters = step;
    const double rel = frobenius_norm(sylvester_residual(p, out.x)) / scale;
    rep.residual_history.push_back(rel);
    if (!std::isfinite(rel) || rel > cfg.divergence_threshold) {
      rep.termination = Termination::Diverged;
      rep.detail = "relative residual " + std::to_string(rel) + " at outer step " + std::to_string(step);
      break;
    }
  }
  rep.converged = rep.residual_history.back() <= cfg.outer_tol;
  if (rep.converged) rep.termination = Termination::Converged;
  rep.detail = rep.detail.empty() ? "alpha=" + std::to_string(alpha) : rep.detail;
  rep.wall_seconds = seconds_since(start);
  return out;
}

SolveResult gmres_kron_solve(const SylvesterProblem& p, const KrylovConfig& cfg) {
  const auto start = Clock::now();
  cfg.validate();
  const double scale = rhs_scale(p);
  const detail::LinearMap op = [&](const DenseMatrix& y) { return sylvester_apply(p.a(), p.b(), y); };
  detail::KrylovOutcome k =
      detail::gmres(op, p.c(), DenseMatrix(p.n(), p.m()), cfg.restart, cfg.max_iters,
                    cfg.max_iters * cfg.restart, cfg.tol * scale, scale);
  SolveResult out{std::move(k.x), {}};
  finish(out.report, k, cfg.tol);
  out.report.total_inner_iters = k.steps;
  if (k.termination == Termination::Stagnation) {
    out.report.detail = "no residual decrease across a restart cycle";
  }
  out.report.wall_seconds = seconds_since(start);
  return out;
}

SolveResult bicgstab_kron_solve(const SylvesterProblem& p, const KrylovConfig& cfg) {
  const auto start = Clock::now();
  cfg.validate();
  const double scale = rhs_scale(p);
  const detail::LinearMap op = [&](const DenseMatrix& y) { return sylvester_apply(p.a(), p.b(), y); };
  detail::KrylovOutcome k = detail::bicgstab(op, p.c(), DenseMatrix(p.n(), p.m()),
                                             cfg.max_iters, cfg.tol * scale, scale);
  SolveResult out{std::move(k.x), {}};
  finish(out.report, k, cfg.tol);
  if (k.termination == Termination::Breakdown) out.report.detail = "breakdown";
  out.report.wall_seconds = seconds_since(start);
  return out;
}

}  // namespace sylv
