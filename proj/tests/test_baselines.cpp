#include <doctest.h>

#include <cmath>

#include "../src/krylov.hpp"
#include "support.hpp"
#include "sylv/baselines.hpp"
#include "sylv/error.hpp"
#include "sylv/generators.hpp"
#include "sylv/spectral.hpp"

using namespace sylv;
using testing::Rng;

namespace {

DenseMatrix oracle(const SylvesterProblem& p) {
  return testing::brute_sylvester(p.a().to_dense(), p.b().to_dense(), p.c());
}

}  // namespace

TEST_CASE("baselines on the identity operator") {
  const SylvesterProblem p(DenseMatrix::identity(3), DenseMatrix::identity(3),
                           DenseMatrix(3, 3, 2.0));
  const SolveResult g = gmres_kron_solve(p, KrylovConfig{});
  CHECK(g.report.converged);
  CHECK(*g.report.total_inner_iters == 1);
  CHECK(testing::max_abs_diff(g.x, DenseMatrix::ones(3, 3)) < 1e-14);

  const SolveResult b = bicgstab_kron_solve(p, KrylovConfig{});
  CHECK(b.report.converged);
  CHECK(b.report.outer_iters == 1);
  CHECK_FALSE(b.report.total_inner_iters.has_value());

  const SolveResult h = hss_solve(p, HssConfig{});
  CHECK(h.report.converged);
  CHECK(testing::max_abs_diff(h.x, DenseMatrix::ones(3, 3)) < 1e-8);
}

TEST_CASE("baselines against the dense oracle") {
  Rng rng(1);
  KrylovConfig kc;
  kc.tol = 1e-10;
  HssConfig hc;
  hc.outer_tol = 1e-10;
  hc.inner.tol = 1e-12;
  for (int trial = 0; trial < 10; ++trial) {
    const SylvesterProblem p = testing::random_problem(rng, rng.index(1, 10), rng.index(1, 10));
    const DenseMatrix x = oracle(p);
    const SolveResult g = gmres_kron_solve(p, kc);
    const SolveResult b = bicgstab_kron_solve(p, kc);
    const SolveResult h = hss_solve(p, hc);
    REQUIRE(g.report.converged);
    REQUIRE(b.report.converged);
    REQUIRE(h.report.converged);
    CHECK(testing::rel_diff(g.x, x) <= 1e-6);
    CHECK(testing::rel_diff(b.x, x) <= 1e-6);
    CHECK(testing::rel_diff(h.x, x) <= 1e-6);
  }
}

TEST_CASE("gmres accounting") {
  const SolveResult r = gmres_kron_solve(gen_example1(32), KrylovConfig{});
  const SolveReport& rep = r.report;
  REQUIRE(rep.converged);
  CHECK(rep.residual_history.size() == rep.outer_iters + 1);
  CHECK(*rep.total_inner_iters <= 10 * rep.outer_iters);
  CHECK(*rep.total_inner_iters > 10 * (rep.outer_iters - 1));
  // Arnoldi residual estimates never increase inside a cycle.
  REQUIRE(rep.step_history.size() == *rep.total_inner_iters);
  for (std::size_t k = 1; k < rep.step_history.size(); ++k) {
    if (k % 10 == 0) continue;  // a new cycle starts
    CHECK(rep.step_history[k] <= rep.step_history[k - 1] * (1 + 1e-12));
  }
  // Reference (7, 70): within a quarter.
  CHECK(rep.outer_iters >= 6);
  CHECK(rep.outer_iters <= 8);
}

TEST_CASE("gmres restart length") {
  KrylovConfig kc;
  kc.restart = 1000;
  const SolveResult full = gmres_kron_solve(gen_example1(16), kc);
  CHECK(full.report.converged);
  CHECK(full.report.outer_iters == 1);
  kc.restart = 0;
  CHECK_THROWS_AS(gmres_kron_solve(gen_example1(4), kc), Error);
}

TEST_CASE("bicgstab breakdown is reported") {
  // Skew A with B = 0: the first shadow product vanishes.
  const SylvesterProblem p(DenseMatrix::from_rows({{0, 1}, {-1, 0}}), DenseMatrix(1, 1),
                           DenseMatrix::from_rows({{1}, {0}}));
  const SolveResult r = bicgstab_kron_solve(p, KrylovConfig{});
  CHECK_FALSE(r.report.converged);
  CHECK(r.report.termination == Termination::Breakdown);
  CHECK(r.report.detail == "breakdown");
  CHECK(to_string(r.report.termination) == std::string("breakdown"));

  // GMRES handles the same system.
  const SolveResult g = gmres_kron_solve(p, KrylovConfig{});
  CHECK(g.report.converged);
  CHECK(testing::max_abs_diff(g.x, DenseMatrix::from_rows({{0}, {1}})) < 1e-12);
}

TEST_CASE("hss") {
  SUBCASE("default shift") {
    const SylvesterProblem p(DiagonalMatrix{{1.0, 4.0}}, DiagonalMatrix{{1.0, 2.0}},
                             DenseMatrix::ones(2, 2));
    // sqrt((1 + 1) * (4 + 2))
    CHECK(hss_default_alpha(p) == doctest::Approx(std::sqrt(12.0)));
  }
  SUBCASE("symmetric coefficients use the closed-form second half") {
    Rng rng(2);
    const SylvesterProblem p(testing::random_spd(rng, 5), testing::random_spd(rng, 4),
                             testing::random_dense(rng, 5, 4));
    HssConfig cfg;
    cfg.inner.tol = 1e-12;
    const SolveResult r = hss_solve(p, cfg);
    CHECK(r.report.converged);
    CHECK(testing::rel_diff(r.x, oracle(p)) <= 1e-6);
  }
  SUBCASE("monotone residuals near the optimal shift") {
    Rng rng(3);
    const SylvesterProblem p = testing::random_problem(rng, 8, 6, 0.1);
    const double alpha0 = hss_default_alpha(p);
    for (double factor : {0.25, 1.0, 4.0}) {
      HssConfig cfg;
      cfg.alpha = factor * alpha0;
      cfg.inner.tol = 1e-12;
      const SolveResult r = hss_solve(p, cfg);
      REQUIRE(r.report.converged);
      const auto& h = r.report.residual_history;
      for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] < h[k - 1]);
    }
  }
  SUBCASE("configuration checks") {
    HssConfig cfg;
    cfg.alpha = -1.0;
    CHECK_NOTHROW(cfg.validate());  // non-positive selects the default
    cfg.outer_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
  }
  SUBCASE("example 1 against the reference count") {
    const SolveResult r = hss_solve(gen_example1(32), HssConfig{});
    CHECK(r.report.converged);
    CHECK(r.report.outer_iters >= 36);
    CHECK(r.report.outer_iters <= 60);
    CHECK(r.report.detail.rfind("alpha=", 0) == 0);
  }
}

TEST_CASE("krylov kernels directly") {
  using detail::gmres;
  const DenseMatrix a = DenseMatrix::from_rows({{4, 1, 0}, {1, 3, 1}, {0, 1, 2}});
  const detail::LinearMap op = [&](const DenseMatrix& x) { return matmul(a, x); };
  const DenseMatrix b = DenseMatrix::from_rows({{1}, {2}, {3}});
  const detail::KrylovOutcome out = gmres(op, b, DenseMatrix(3, 1), 3, 10, 100, 1e-12, 1.0);
  CHECK(out.termination == Termination::Converged);
  CHECK(out.steps <= 3);
  CHECK(testing::max_abs_diff(matmul(a, out.x), b) < 1e-10);

  const detail::KrylovOutcome bi = detail::bicgstab(op, b, DenseMatrix(3, 1), 100, 1e-12, 1.0);
  CHECK(bi.termination == Termination::Converged);
  CHECK(testing::max_abs_diff(matmul(a, bi.x), b) < 1e-10);
}
