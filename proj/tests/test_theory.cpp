#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "sylv/csr_matrix.hpp"
#include "sylv/error.hpp"
#include "sylv/generators.hpp"
#include "sylv/msi.hpp"
#include "sylv/spectral.hpp"
#include "sylv/theory.hpp"

using namespace sylv;
using testing::Rng;

namespace {

SplittingSpectra spectra(double min_m, double max_m, double min_p, double max_p, double n,
                         double q) {
  SplittingSpectra s;
  s.lambda_min_m = min_m;
  s.lambda_max_m = max_m;
  s.lambda_min_p = min_p;
  s.lambda_max_p = max_p;
  s.max_abs_lambda_n = n;
  s.max_abs_lambda_q = q;
  return s;
}

}  // namespace

TEST_CASE("splitting spectra") {
  SUBCASE("identity and zero") {
    const SplittingPair a = custom_split(DenseMatrix::identity(2), DenseMatrix(2, 2));
    const SplittingPair b = custom_split(DenseMatrix::identity(3), DenseMatrix(3, 3));
    const SplittingSpectra s = splitting_spectra(a, b);
    CHECK(s.lambda_min_m == doctest::Approx(1.0));
    CHECK(s.lambda_max_m == doctest::Approx(1.0));
    CHECK(s.lambda_min_p == doctest::Approx(1.0));
    CHECK(s.lambda_max_p == doctest::Approx(1.0));
    CHECK(s.max_abs_lambda_n == 0.0);
    CHECK(s.max_abs_lambda_q == 0.0);
  }
  SUBCASE("skew N has modulus-one eigenvalues") {
    const SplittingPair a = custom_split(DenseMatrix::identity(2), DenseMatrix::from_rows({{0, -1}, {1, 0}}));
    const SplittingPair b = custom_split(DenseMatrix::identity(1), DenseMatrix(1, 1));
    CHECK(splitting_spectra(a, b).max_abs_lambda_n == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("tridiagonal closed form") {
    const SplittingPair a = hs_split(CsrMatrix::tridiagonal(3, -1, 2, -1));
    const SplittingPair b = jacobi_split(DenseMatrix::identity(2));
    const SplittingSpectra s = splitting_spectra(a, b);
    CHECK(s.lambda_min_m == doctest::Approx(2.0 - std::numbers::sqrt2).epsilon(1e-14));
    CHECK(s.lambda_max_m == doctest::Approx(2.0 + std::numbers::sqrt2).epsilon(1e-14));
  }
  SUBCASE("non-symmetric M is rejected") {
    const SplittingPair a = custom_split(DenseMatrix::from_rows({{2, 1}, {0, 2}}), DenseMatrix(2, 2));
    CHECK_THROWS_AS(splitting_spectra(a, a), Error);
  }
  SUBCASE("size guard and the large fallback") {
    const std::size_t n = 2100;
    const double r = 0.01;
    const CsrMatrix a = gen_example1(n, r).a().sparse();
    const SplittingPair hs = hs_split(a);
    const SplittingPair jac = jacobi_split(a);
    CHECK_THROWS_AS(splitting_spectra(hs, jac), Error);

    SpectraOptions opts;
    opts.large_fallback = true;
    const SplittingSpectra s = splitting_spectra(hs, jac, opts);
    const double d = a.at(0, 0);
    const double c = std::cos(std::numbers::pi / static_cast<double>(n + 1));
    CHECK(s.lambda_max_m == doctest::Approx(d + 2 * c).epsilon(1e-3));
    CHECK(s.lambda_min_m == doctest::Approx(d - 2 * c).epsilon(1e-1));
    // Eigenvalues of the skew tridiagonal remainder are +-i * 2r cos(k pi/(n+1)).
    CHECK(s.max_abs_lambda_n >= 2 * r * c * (1 - 1e-9));
    CHECK(s.max_abs_lambda_n <= 2 * r * 1.02);
  }
}

TEST_CASE("theta and varrho") {
  CHECK(theta(spectra(1, 1, 1, 1, 0, 0)) == 1.0);
  CHECK(theta(spectra(1, 3, 1, 2, 0, 0)) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
  CHECK_THROWS_AS(theta(spectra(0, 1, 0, 1, 0, 0)), Error);
  CHECK_THROWS_AS(varrho(spectra(-1, 1, 1, 1, 0, 0)), Error);
  CHECK(varrho(spectra(1, 2, 1, 3, 0, 0)) == 0.0);
  CHECK(varrho(spectra(1, 1, 1, 1, 0.5, 0.5)) == doctest::Approx(0.5));
  // theta = 2 with lambda_min sum 2 requires lambda_max sum 8.
  CHECK(varrho(spectra(1, 4, 1, 4, 0.25, 0.75)) == doctest::Approx(4.0));
}

TEST_CASE("bound check") {
  SUBCASE("exact splittings") {
    const SplittingPair a = custom_split(DenseMatrix::identity(3), DenseMatrix(3, 3));
    const SplittingPair b = custom_split(DenseMatrix::identity(2), DenseMatrix(2, 2));
    const BoundReport r = msi_bound_check(a, b, a, b);
    CHECK(r.product == 0.0);
    CHECK(r.predicts_convergence);
    CHECK(r.theta[0] >= 1.0);
  }
  SUBCASE("example 1 regression and sufficiency") {
    const SylvesterProblem p = gen_example1(32);
    const BoundReport r = msi_bound_check(hs_split(p.a()), hs_split(p.b()), jacobi_split(p.a()),
                                          jacobi_split(p.b()));
    CHECK(r.theta[0] >= 1.0);
    CHECK(r.theta[1] == doctest::Approx(1.0));
    CHECK(r.product == doctest::Approx(48.356233936).epsilon(1e-8));
    CHECK_FALSE(r.predicts_convergence);
    // The certificate fails yet the iteration converges: the condition is
    // sufficient, not necessary.
    CHECK(msi_solve_hs_jacobi(p, MsiConfig{}).report.converged);
  }
}

TEST_CASE("weighted operator norm") {
  Rng rng(1);
  const DenseMatrix m = testing::random_spd(rng, 6);
  CHECK(weighted_operator_norm(m, DenseMatrix(6, 6)) == 0.0);
  CHECK(weighted_operator_norm(m, 0.1 * m) == doctest::Approx(0.1).epsilon(1e-12));
  // ||[[1,2],[0,1]]||_2 = 1 + sqrt(2).
  CHECK(weighted_operator_norm(DenseMatrix::identity(2), DenseMatrix::from_rows({{1, 2}, {0, 1}})) ==
        doctest::Approx(1.0 + std::numbers::sqrt2).epsilon(1e-14));
  CHECK_THROWS_AS(weighted_operator_norm(DenseMatrix::from_rows({{1, 0}, {0, -1}}), DenseMatrix(2, 2)),
                  Error);
  CHECK_THROWS_AS(weighted_operator_norm(DenseMatrix::from_rows({{1, 1}, {0, 1}}), DenseMatrix(2, 2)),
                  Error);
}

TEST_CASE("weighted-norm bound needs normal remainders") {
  // Nilpotent N has no nonzero eigenvalue, so the right-hand side collapses
  // to zero while the weighted norm does not.
  const SplittingPair a = custom_split(DenseMatrix::identity(2), DenseMatrix::from_rows({{0, 5}, {0, 0}}));
  const SplittingPair b = custom_split(DenseMatrix::identity(1), DenseMatrix(1, 1));
  const SplittingSpectra s = splitting_spectra(a, b);
  CHECK(varrho(s) == 0.0);
  const double w = weighted_operator_norm(kron_assemble(a.m_part, b.m_part),
                                          kron_assemble(a.n_part, b.n_part));
  // Assembled M is 2I, so the weighted norm is 5 / 2.
  CHECK(w == doctest::Approx(2.5));
}

TEST_CASE("kronecker eigenvalue structure") {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = rng.index(1, 7), m = rng.index(1, 7);
    const DenseMatrix a = testing::random_spd(rng, n), b = testing::random_spd(rng, m);
    const auto ea = symmetric_eigenvalues(a), eb = symmetric_eigenvalues(b);
    const auto ek = symmetric_eigenvalues(testing::brute_kron(a, b));
    const double lo = *std::min_element(ea.begin(), ea.end()) + *std::min_element(eb.begin(), eb.end());
    const double hi = *std::max_element(ea.begin(), ea.end()) + *std::max_element(eb.begin(), eb.end());
    CHECK(*std::min_element(ek.begin(), ek.end()) >= lo - 1e-10);
    CHECK(*std::max_element(ek.begin(), ek.end()) <= hi + 1e-10);
  }
}

TEST_CASE("iteration matrix") {
  Rng rng(3);
  SUBCASE("exact splittings give zero") {
    const SplittingPair a = custom_split(testing::random_spd(rng, 3), DenseMatrix(3, 3));
    const SplittingPair b = custom_split(testing::random_spd(rng, 2), DenseMatrix(2, 2));
    CHECK(iteration_matrix_rho(a, b, a, b, 3, 2) == 0.0);
  }
  SUBCASE("repeated splitting squares the one-step radius") {
    const SylvesterProblem p = testing::random_problem(rng, 4, 3);
    const SplittingPair a = hs_split(p.a()), b = hs_split(p.b());
    const DenseMatrix step = solve_dense(kron_assemble(a.m_part, b.m_part),
                                         kron_assemble(a.n_part, b.n_part));
    const double r = spectral_radius(step);
    CHECK(iteration_matrix_rho(a, b, a, b, 4, 3) == doctest::Approx(r * r).epsilon(1e-10));
  }
  SUBCASE("dimension checks") {
    const SplittingPair a = hs_split(DenseMatrix::identity(3));
    CHECK_THROWS_AS(iteration_matrix_rho(a, a, a, a, 3, 2), Error);
  }
  SUBCASE("convergence within the predicted number of sweeps") {
    int checked = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const SylvesterProblem p = testing::random_problem(rng, rng.index(2, 7), rng.index(2, 7));
      const double rho = iteration_matrix_rho(hs_split(p.a()), hs_split(p.b()), jacobi_split(p.a()),
                                              jacobi_split(p.b()), p.n(), p.m());
      if (!(rho < 1.0) || rho == 0.0) continue;
      MsiConfig cfg;
      cfg.inner.tol = 1e-12;
      cfg.max_outer = static_cast<std::size_t>(10 * std::ceil(std::log(1e-8) / std::log(rho)));
      CHECK(msi_solve_hs_jacobi(p, cfg).report.converged);
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("spectral utilities") {
  CHECK(spectral_radius(DenseMatrix::from_rows({{0, -2}, {2, 0}})) == doctest::Approx(2.0));
  CHECK(spectral_radius(Matrix(DiagonalMatrix{{-3.0, 1.0}})) == 3.0);
  CHECK(spectral_norm(DenseMatrix::from_rows({{3, 0}, {0, -4}})) == doctest::Approx(4.0));
  const EigenRange r = symmetric_eigen_range(CsrMatrix::tridiagonal(3, -1, 2, -1));
  CHECK(r.min == doctest::Approx(2.0 - std::numbers::sqrt2));
  CHECK(r.max == doctest::Approx(2.0 + std::numbers::sqrt2));
}
