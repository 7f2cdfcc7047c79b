#include "sylv/msi.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "sylv/error.hpp"

namespace sylv {

void MsiConfig::validate() const {
  if (!(outer_tol > 0.0 && outer_tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "MsiConfig: outer_tol must lie in (0, 1)");
  }
  if (max_outer < 1) throw Error(ErrorCode::InvalidArgument, "MsiConfig: max_outer must be >= 1");
  inner.validate();
}

namespace {

void require_conformant(const SplittingPair& s, std::size_t size, const char* name) {
  if (s.size() != size || s.n_part.rows() != size || s.n_part.cols() != size) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string("msi: splitting ") + name + " does not match problem size " +
                    std::to_string(size));
  }
}

void require_spd(const SplittingPair& s, const char* name) {
  if (!validate_spd(s.m_part)) {
    throw Error(ErrorCode::NotSpd,
                std::string("msi: M part of splitting ") + name +
                    " is not symmetric positive definite");
  }
}

struct HalfStep {
  const SplittingPair& a;
  const SplittingPair& b;
};

/// Solves M Y + Y P = N Z + Z Q + C for Y; returns inner iterations spent.
std::size_t half_step(const HalfStep& s, const DenseMatrix& z, const DenseMatrix& c,
                      const InnerConfig& inner, DenseMatrix& y) {
  DenseMatrix rhs = sylvester_apply(s.a.n_part, s.b.n_part, z);
  rhs += c;
  if (s.a.has_diagonal_m() && s.b.has_diagonal_m()) {
    y = diag_sylvester_solve(s.a.m_part.diag().entries, s.b.m_part.diag().entries, rhs);
    return 0;
  }
  InnerResult r = cg_sylvester_solve(s.a.m_part, s.b.m_part, rhs, inner, y);
  y = std::move(r.x);
  return r.iters;
}

}  // namespace

SolveResult msi_solve_general(const SylvesterProblem& p, const SplittingPair& a1,
                              const SplittingPair& b1, const SplittingPair& a2,
                              const SplittingPair& b2, const MsiConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  require_conformant(a1, p.n(), "A1");
  require_conformant(a2, p.n(), "A2");
  require_conformant(b1, p.m(), "B1");
  require_conformant(b2, p.m(), "B2");
  require_spd(a1, "A1");
  require_spd(b1, "B1");
  require_spd(a2, "A2");
  require_spd(b2, "B2");

  SolveResult out{DenseMatrix(p.n(), p.m()), {}};
  if (cfg.x0) {
    if (cfg.x0->rows() != p.n() || cfg.x0->cols() != p.m()) {
      throw Error(ErrorCode::DimensionMismatch, "msi: initial guess has the wrong shape");
    }
    out.x = *cfg.x0;
  }
  SolveReport& rep = out.report;
  rep.total_inner_iters = 0;

  const double c_norm = frobenius_norm(p.c());
  const double scale = c_norm > 0.0 ? c_norm : 1.0;
  auto relative_residual = [&](const DenseMatrix& x) {
    return frobenius_norm(sylvester_residual(p, x)) / scale;
  };

  rep.residual_history.push_back(relative_residual(out.x));
  DenseMatrix u = out.x;
  const HalfStep first{a1, b1};
  const HalfStep second{a2, b2};

  while (rep.residual_history.back() > cfg.outer_tol) {
    if (rep.outer_iters == cfg.max_outer) {
      rep.termination = Termination::MaxIterations;
      break;
    }
    const std::size_t step = rep.outer_iters + 1;
    try {
      // Both half-steps warm start from the latest outer iterate. Closed-form
      // half-steps report zero inner iterations.
      u = out.x;
      *rep.total_inner_iters += half_step(first, out.x, p.c(), cfg.inner, u);
      *rep.total_inner_iters += half_step(second, u, p.c(), cfg.inner, out.x);
    } catch (const Error& e) {
      throw Error(e.code(), "msi outer step " + std::to_string(step) + ": " + e.what());
    }
    rep.outer_iters = step;
    const double rel = relative_residual(out.x);
    rep.residual_history.push_back(rel);
    if (cfg.on_sweep) cfg.on_sweep(step, u, out.x);
    if (!std::isfinite(rel) || rel > cfg.divergence_threshold) {
      rep.termination = Termination::Diverged;
      rep.detail = "relative residual " + std::to_string(rel) + " at outer step " +
                   std::to_string(step);
      break;
    }
  }
  rep.converged = rep.residual_history.back() <= cfg.outer_tol;
  if (rep.converged) rep.termination = Termination::Converged;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

SolveResult msi_solve_hs_jacobi(const SylvesterProblem& p, const MsiConfig& cfg) {
  for (const Matrix* m : {&p.a(), &p.b()}) {
    const auto d = m->diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!(d[i] > 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string("msi_solve_hs_jacobi: non-positive diagonal entry in ") +
                        (m == &p.a() ? "A" : "B") + " at index " + std::to_string(i));
      }
    }
  }
  const SplittingPair a1 = hs_split(p.a());
  const SplittingPair b1 = hs_split(p.b());
  const SplittingPair a2 = jacobi_split(p.a());
  const SplittingPair b2 = jacobi_split(p.b());
  return msi_solve_general(p, a1, b1, a2, b2, cfg);
}

}  // namespace sylv
