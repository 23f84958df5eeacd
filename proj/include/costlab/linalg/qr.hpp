#pragma once

#include "costlab/linalg/matrix.hpp"

namespace costlab::linalg {

struct QrFactors {
  Matrix q;  // rows x cols, orthonormal columns
  Matrix r;  // cols x cols, upper triangular, non-negative diagonal
};

/// Thin QR of a tall matrix (rows >= cols) by Givens rotations.
/// The diagonal of R is forced non-negative, which makes the factorization
/// unique and the output deterministic. Throws on rows < cols.
QrFactors qr_decompose(const Matrix& z, FlopCounter* flops = nullptr);

}  // namespace costlab::linalg
