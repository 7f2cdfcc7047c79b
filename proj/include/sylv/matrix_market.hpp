#pragma once

#include <filesystem>

#include "sylv/csr_matrix.hpp"
#include "sylv/dense_matrix.hpp"

namespace sylv {

/// Reads a real (or integer) Matrix Market file in coordinate or array
/// layout with general or symmetric symmetry. Symmetric files are mirrored,
/// duplicate coordinates summed. Throws Parse / Io.
CsrMatrix read_matrix_market(const std::filesystem::path& path);

/// Same parser, densified. Convenient for right-hand sides stored as arrays.
DenseMatrix read_matrix_market_dense(const std::filesystem::path& path);

/// Writes coordinate/real/general with shortest round-trip decimal values.
void write_matrix_market(const CsrMatrix& m, const std::filesystem::path& path);
/// Writes array/real/general, column-major.
void write_matrix_market(const DenseMatrix& m, const std::filesystem::path& path);

}  // namespace sylv
