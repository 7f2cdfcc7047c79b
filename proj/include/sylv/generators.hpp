#pragma once

#include <cstddef>
#include <filesystem>

#include "sylv/la.hpp"

namespace sylv {

/// A = B = tridiag(-1, 2, -1) + 2r tridiag(0.5, 0, -0.5) + 100/(n+1)^2 I in
/// CSR storage; C = A*1 + 1*B so that the exact solution is all ones.
SylvesterProblem gen_example1(std::size_t n, double r = 0.01);

/// A = diag(1..n) + r L^T, B = 2^-t I + diag(1..n) + r L^T + 2^-t L, with L
/// strictly lower triangular ones. Dense; C chosen for an all-ones solution.
SylvesterProblem gen_example2(std::size_t n, double r = 0.01, double t = 1.0);

/// A read from a SHERMAN3 Matrix Market file, B = tridiag(-1, 4, -2) of
/// order 8, all-ones solution. Throws DataNotPresent when the file is absent.
SylvesterProblem load_example3(const std::filesystem::path& path_a);

/// C = A*X + X*B for the given A, B, X.
DenseMatrix rhs_for_solution(const Matrix& a, const Matrix& b, const DenseMatrix& x);

}  // namespace sylv
