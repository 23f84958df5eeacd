#pragma once

#include <string>
#include <string_view>

#include "costlab/linalg/matrix.hpp"

namespace costlab::harness {

enum class MatrixFileFormat { MatrixMarket, Csv };

/// Accepts "matrix-market" (or "mm") and "csv".
MatrixFileFormat parse_matrix_format(std::string_view token);

/// Loads a dense matrix. Matrix Market files must be "array real general"
/// (entries in column-major order); CSV files hold one row per line with
/// comma-separated decimal values. Malformed input throws ParseError with
/// the offending line number.
linalg::Matrix load_matrix(const std::string& path, MatrixFileFormat format);

/// Writes with 17 significant digits, so load(save(m)) reproduces m exactly.
void save_matrix(const linalg::Matrix& m, const std::string& path,
                 MatrixFileFormat format);

}  // namespace costlab::harness
