#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "support.hpp"
#include "sylv/csr_matrix.hpp"
#include "sylv/error.hpp"
#include "sylv/la.hpp"
#include "sylv/matrix.hpp"
#include "sylv/matrix_market.hpp"

using namespace sylv;
using testing::Rng;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sylv_test_la_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("frobenius norm") {
  CHECK(frobenius_norm(DenseMatrix(3, 3)) == 0.0);
  CHECK(frobenius_norm(DenseMatrix::identity(3)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(frobenius_norm(DenseMatrix::from_rows({{1, 2}, {3, 4}})) ==
        doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));

  SUBCASE("matches the Euclidean norm of vec") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const DenseMatrix m = testing::random_dense(rng, rng.index(1, 9), rng.index(1, 9));
      double s = 0.0;
      for (double v : vec(m)) s += v * v;
      CHECK(std::abs(frobenius_norm(m) - std::sqrt(s)) <= 1e-14 * std::sqrt(s));
    }
  }
  SUBCASE("no overflow for huge entries") {
    const DenseMatrix m(2, 2, 1e200);
    CHECK(frobenius_norm(m) == doctest::Approx(2e200));
  }
}

TEST_CASE("dense matrix construction and arithmetic") {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a(1, 0) == 4.0);
  CHECK(a.data()[1] == 4.0);  // column-major
  CHECK(a.transpose()(2, 1) == 6.0);
  CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<double>(3)), Error);

  const DenseMatrix b = DenseMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}});
  CHECK(matmul(a, b) == DenseMatrix::from_rows({{4, 5}, {10, 11}}));
  CHECK(frobenius_dot(a, a) == doctest::Approx(91.0));

  DenseMatrix y = DenseMatrix::ones(2, 3);
  axpy(2.0, a, y);
  CHECK(y(1, 2) == 13.0);

  DenseMatrix bad = DenseMatrix::ones(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(bad.all_finite());
  CHECK_THROWS_AS(bad.require_finite("X"), Error);
}

TEST_CASE("matmul agrees with naive product") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = rng.index(1, 12), k = rng.index(1, 12), m = rng.index(1, 12);
    const DenseMatrix a = testing::random_dense(rng, n, k);
    const DenseMatrix b = testing::random_dense(rng, k, m);
    CHECK(testing::max_abs_diff(matmul(a, b), testing::naive_matmul(a, b)) < 1e-13);
  }
}

TEST_CASE("csr construction") {
  SUBCASE("invariants are enforced") {
    CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 2, 1}, {0, 1, 0}, {1, 2, 3}), Error);  // offsets decrease
    CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 2, 2}, {1, 0}, {1, 2}), Error);        // unsorted columns
    CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 1, 2}, {0, 2}, {1, 2}), Error);        // column out of range
    CHECK_NOTHROW(CsrMatrix(2, 2, {0, 1, 2}, {0, 1}, {1, 2}));
  }

  SUBCASE("duplicate triplets are summed") {
    const CsrMatrix m = CsrMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 2.0}, {0, 0, 3.0}});
    CHECK(m.nnz() == 2);
    CHECK(m.at(0, 0) == 4.0);
  }

  SUBCASE("permutation invariance") {
    Rng rng(3);
    std::vector<Triplet> t;
    for (int k = 0; k < 40; ++k) {
      t.push_back({rng.index(0, 6), rng.index(0, 4), static_cast<double>(rng.integer(-9, 9))});
    }
    const CsrMatrix ref = CsrMatrix::from_triplets(7, 5, t);
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(t.begin(), t.end(), rng.engine());
      CHECK(CsrMatrix::from_triplets(7, 5, t) == ref);
    }
  }

  SUBCASE("tridiagonal layout") {
    const CsrMatrix t = CsrMatrix::tridiagonal(4, -1.0, 2.0, -3.0);
    CHECK(t.nnz() == 10);
    CHECK(t.at(1, 0) == -1.0);
    CHECK(t.at(0, 1) == -3.0);
    CHECK(t.at(3, 3) == 2.0);
    CHECK(t.at(0, 3) == 0.0);
  }
}

TEST_CASE("csr products match dense products") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = rng.index(1, 9), m = rng.index(1, 9);
    DenseMatrix a = testing::random_dense(rng, n, n);
    for (std::size_t k = 0; k < n * n; ++k)
      if (rng.uniform() < 0.0) a.data()[k] = 0.0;  // roughly half the pattern
    const CsrMatrix s = CsrMatrix::from_dense(a);
    const DenseMatrix x = testing::random_dense(rng, n, m);
    const DenseMatrix y = testing::random_dense(rng, m, n);
    CHECK(testing::max_abs_diff(s.multiply(x), testing::naive_matmul(a, x)) < 1e-13);
    CHECK(testing::max_abs_diff(s.multiply_right(y), testing::naive_matmul(y, a)) < 1e-13);
    CHECK(s.transpose().to_dense() == a.transpose());
    CHECK(s.to_dense() == a);
  }
}

TEST_CASE("matrix variants dispatch consistently") {
  Rng rng(9);
  const DenseMatrix a = testing::random_dense(rng, 5, 5);
  const DenseMatrix x = testing::random_dense(rng, 5, 3);
  DiagonalMatrix d{{1.0, 2.0, 3.0, 4.0, 5.0}};
  DenseMatrix dd(5, 5);
  for (std::size_t i = 0; i < 5; ++i) dd(i, i) = d.entries[i];

  for (const Matrix& m : {Matrix(a), Matrix(CsrMatrix::from_dense(a))}) {
    CHECK(testing::max_abs_diff(m.multiply_left(x), testing::naive_matmul(a, x)) < 1e-13);
    CHECK(testing::max_abs_diff(m.multiply_right(x.transpose()),
                                testing::naive_matmul(x.transpose(), a)) < 1e-13);
  }
  const Matrix dm(d);
  CHECK(testing::max_abs_diff(dm.multiply_left(x), testing::naive_matmul(dd, x)) < 1e-15);
  CHECK(dm.to_dense() == dd);
  CHECK(linear_combination(1.0, dm, 2.0, dm).is_diagonal());
  CHECK(linear_combination(1.0, Matrix(CsrMatrix::from_dense(a)), -1.0, dm).is_sparse());
  CHECK(Matrix(a).asymmetry() > 0.0);
  CHECK(Matrix(testing::random_symmetric(rng, 4)).asymmetry() == 0.0);
}

TEST_CASE("sylvester problem and residual") {
  CHECK_THROWS_AS(SylvesterProblem(DenseMatrix(2, 3), DenseMatrix::identity(2), DenseMatrix(2, 2)),
                  Error);
  CHECK_THROWS_AS(SylvesterProblem(DenseMatrix::identity(2), DenseMatrix::identity(3),
                                   DenseMatrix(2, 2)),
                  Error);

  const SylvesterProblem p1(DenseMatrix::identity(2), DenseMatrix::identity(2),
                            DenseMatrix(2, 2, 2.0));
  CHECK(frobenius_norm(sylvester_residual(p1, DenseMatrix::ones(2, 2))) == 0.0);
  CHECK(sylvester_residual(p1, DenseMatrix(2, 2)) == p1.c());

  const SylvesterProblem p2(DenseMatrix::from_rows({{1, 0}, {0, 2}}), DenseMatrix::from_rows({{3}}),
                            DenseMatrix::from_rows({{4}, {5}}));
  CHECK(frobenius_norm(sylvester_residual(p2, DenseMatrix::ones(2, 1))) == 0.0);
  CHECK_THROWS_AS(sylvester_residual(p2, DenseMatrix(1, 2)), Error);

  SUBCASE("sparse coefficients give the dense residual") {
    Rng rng(2);
    const DenseMatrix a = testing::random_dense(rng, 6, 6), b = testing::random_dense(rng, 4, 4);
    const DenseMatrix c = testing::random_dense(rng, 6, 4), x = testing::random_dense(rng, 6, 4);
    const SylvesterProblem dense(a, b, c);
    const SylvesterProblem sparse(CsrMatrix::from_dense(a), CsrMatrix::from_dense(b), c);
    const DenseMatrix expect =
        c - testing::naive_matmul(a, x) - testing::naive_matmul(x, b);
    CHECK(testing::max_abs_diff(sylvester_residual(dense, x), expect) < 1e-13);
    CHECK(testing::max_abs_diff(sylvester_residual(sparse, x), expect) < 1e-13);
  }
}

TEST_CASE("vec and unvec") {
  const DenseMatrix x = DenseMatrix::from_rows({{1, 3}, {2, 4}});
  CHECK(vec(x) == std::vector<double>{1, 2, 3, 4});

  Rng rng(4);
  std::vector<double> v(35);
  for (double& e : v) e = rng.uniform();
  CHECK(vec(unvec(v, 5, 7)) == v);
  CHECK_THROWS_AS(unvec(v, 5, 6), Error);
}

TEST_CASE("kronecker operator") {
  SUBCASE("identity doubles, zero annihilates") {
    const std::vector<double> v{1, -2, 3, 4, 5, 6};
    const std::vector<double> twice = kron_apply(DenseMatrix::identity(3),
                                                 DenseMatrix::identity(2), v);
    for (std::size_t k = 0; k < v.size(); ++k) CHECK(twice[k] == 2 * v[k]);
    for (double e : kron_apply(DenseMatrix(3, 3), DenseMatrix(2, 2), v)) CHECK(e == 0.0);
  }

  SUBCASE("integer 2x2 case against the brute-force assembly") {
    const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {3, 4}});
    const DenseMatrix b = DenseMatrix::from_rows({{5, -1}, {0, 2}});
    const std::vector<double> v{1, 2, 3, 4};
    CHECK(kron_apply(a, b, v) == matvec(testing::brute_kron(a, b), v));
  }

  SUBCASE("random sizes up to 8") {
    Rng rng(6);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = rng.index(1, 8), m = rng.index(1, 8);
      const DenseMatrix a = testing::random_dense(rng, n, n), b = testing::random_dense(rng, m, m);
      std::vector<double> v(n * m);
      for (double& e : v) e = rng.uniform();
      const DenseMatrix k = kron_assemble(a, b);
      CHECK(testing::max_abs_diff(k, testing::brute_kron(a, b)) == 0.0);
      const std::vector<double> lhs = kron_apply(CsrMatrix::from_dense(a), b, v);
      const std::vector<double> rhs = matvec(k, v);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        num += (lhs[i] - rhs[i]) * (lhs[i] - rhs[i]);
        den += rhs[i] * rhs[i];
      }
      CHECK(std::sqrt(num) <= 1e-12 * std::sqrt(den));
    }
  }

  SUBCASE("assembly edge cases") {
    CHECK(kron_assemble(DenseMatrix::from_rows({{2}}), DenseMatrix::from_rows({{3}})) ==
          DenseMatrix::from_rows({{5}}));
    CHECK(kron_assemble(DenseMatrix::identity(2), DenseMatrix::identity(2)) ==
          2.0 * DenseMatrix::identity(4));
    CHECK_THROWS_AS(kron_assemble(CsrMatrix::identity(65), CsrMatrix::identity(64)), Error);
    CHECK_THROWS_AS(kron_apply(DenseMatrix::identity(2), DenseMatrix::identity(2),
                               std::vector<double>(3)),
                    Error);
  }
}

TEST_CASE("dense elimination") {
  const DenseMatrix a = DenseMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK(solve_dense(a, DenseMatrix::from_rows({{2}, {3}})) == DenseMatrix::from_rows({{3}, {2}}));
  try {
    solve_dense(DenseMatrix::from_rows({{1, 2}, {2, 4}}), DenseMatrix(2, 1, 1.0));
    FAIL("expected a singular error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Singular);
  }
}

TEST_CASE("matrix market reading") {
  SUBCASE("diagonal coordinate file") {
    const auto p = temp_file("diag.mtx");
    write_file(p, "%%MatrixMarket matrix coordinate real general\n% note\n2 2 2\n1 1 5.0\n2 2 7.0\n");
    const CsrMatrix m = read_matrix_market(p);
    CHECK(m.to_dense() == DenseMatrix::from_rows({{5, 0}, {0, 7}}));
  }
  SUBCASE("symmetric lower triangle is mirrored") {
    const auto p = temp_file("sym.mtx");
    write_file(p,
               "%%MatrixMarket matrix coordinate real symmetric\n3 3 4\n1 1 4\n2 1 -1\n3 2 -2\n3 3 6\n");
    CHECK(read_matrix_market(p).to_dense() ==
          DenseMatrix::from_rows({{4, -1, 0}, {-1, 0, -2}, {0, -2, 6}}));
  }
  SUBCASE("skew-symmetric mirrors with a sign flip") {
    const auto p = temp_file("skew.mtx");
    write_file(p, "%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 3\n");
    CHECK(read_matrix_market(p).to_dense() == DenseMatrix::from_rows({{0, -3}, {3, 0}}));
  }
  SUBCASE("empty coordinate file") {
    const auto p = temp_file("empty.mtx");
    write_file(p, "%%MatrixMarket matrix coordinate real general\n3 3 0\n");
    const CsrMatrix m = read_matrix_market(p);
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 3);
    CHECK(m.nnz() == 0);
  }
  SUBCASE("duplicates are summed") {
    const auto p = temp_file("dup.mtx");
    write_file(p, "%%MatrixMarket matrix coordinate real general\n2 2 3\n1 2 1.5\n1 2 2.5\n2 1 1\n");
    CHECK(read_matrix_market(p).at(0, 1) == 4.0);
  }
  SUBCASE("array and integer layouts") {
    const auto p = temp_file("array.mtx");
    write_file(p, "%%MatrixMarket matrix array integer general\n2 2\n1\n2\n3\n4\n");
    CHECK(read_matrix_market_dense(p) == DenseMatrix::from_rows({{1, 3}, {2, 4}}));
  }
  SUBCASE("errors") {
    auto expect = [](const std::string& text, ErrorCode code) {
      const auto p = temp_file("bad.mtx");
      write_file(p, text);
      try {
        read_matrix_market(p);
        FAIL("expected failure for: " << text);
      } catch (const Error& e) {
        CHECK(e.code() == code);
      }
    };
    expect("%%NotMatrixMarket matrix coordinate real general\n1 1 0\n", ErrorCode::Parse);
    expect("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n", ErrorCode::Parse);
    expect("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n", ErrorCode::Parse);
    expect("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n", ErrorCode::Parse);
    expect("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n", ErrorCode::Parse);
    expect("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1\n", ErrorCode::Parse);
    CHECK_THROWS_AS(read_matrix_market(temp_file("does_not_exist.mtx")), Error);
  }
}

TEST_CASE("matrix market round trip is bit exact") {
  Rng rng(12);
  std::vector<Triplet> t;
  for (int k = 0; k < 30; ++k) {
    t.push_back({rng.index(0, 9), rng.index(0, 9), rng.uniform() * std::pow(10.0, rng.integer(-20, 20))});
  }
  const CsrMatrix m = CsrMatrix::from_triplets(10, 10, t);
  const auto p = temp_file("roundtrip.mtx");
  write_matrix_market(m, p);
  CHECK(read_matrix_market(p) == m);

  const DenseMatrix d = testing::random_dense(rng, 4, 3);
  write_matrix_market(d, p);
  CHECK(read_matrix_market_dense(p) == d);

  CHECK_THROWS_AS(write_matrix_market(m, "/nonexistent_dir/x.mtx"), Error);
}
