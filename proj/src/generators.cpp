#include "sylv/generators.hpp"

#include <cmath>
#include <string>

#include "sylv/error.hpp"
#include "sylv/matrix_market.hpp"

namespace sylv {

DenseMatrix rhs_for_solution(const Matrix& a, const Matrix& b, const DenseMatrix& x) {
  return sylvester_apply(a, b, x);
}

SylvesterProblem gen_example1(std::size_t n, double r) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "gen_example1: n must be >= 2");
  const double shift = 100.0 / (static_cast<double>(n + 1) * static_cast<double>(n + 1));
  // tridiag(-1, 2, -1) + 2r tridiag(0.5, 0, -0.5) + shift I
  const double sub = -1.0 + 2.0 * r * 0.5;
  const double super = -1.0 - 2.0 * r * 0.5;
  const double diag = 2.0 + shift;
  Matrix a(CsrMatrix::tridiagonal(n, sub, diag, super));
  Matrix b = a;
  DenseMatrix c = rhs_for_solution(a, b, DenseMatrix::ones(n, n));
  return SylvesterProblem(std::move(a), std::move(b), std::move(c));
}

SylvesterProblem gen_example2(std::size_t n, double r, double t) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "gen_example2: n must be >= 2");
  const double s = std::exp2(-t);
  DenseMatrix a(n, n);
  DenseMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(i + 1);
    a(i, i) = d;
    b(i, i) = s + d;
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = r;      // r L^T
      b(i, j) = r;
      b(j, i) = s;      // 2^-t L
    }
  }
  Matrix am(std::move(a));
  Matrix bm(std::move(b));
  DenseMatrix c = rhs_for_solution(am, bm, DenseMatrix::ones(n, n));
  return SylvesterProblem(std::move(am), std::move(bm), std::move(c));
}

SylvesterProblem load_example3(const std::filesystem::path& path_a) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path_a, ec)) {
    throw Error(ErrorCode::DataNotPresent,
                "load_example3: '" + path_a.string() + "' not present");
  }
  Matrix a(read_matrix_market(path_a));
  Matrix b(CsrMatrix::tridiagonal(8, -1.0, 4.0, -2.0));
  DenseMatrix c = rhs_for_solution(a, b, DenseMatrix::ones(a.rows(), 8));
  return SylvesterProblem(std::move(a), std::move(b), std::move(c));
}

}  // namespace sylv
