#pragma once

#include "costlab/linalg/matrix.hpp"

namespace costlab::linalg {

struct Bidiagonalization {
  Matrix u1;  // n x n orthonormal
  Matrix b;   // n x n upper bidiagonal
  Matrix v1;  // n x n orthonormal
};

/// Reduces a square matrix to upper bidiagonal form by alternating row and
/// column Givens rotations: input = u1 * b * v1. Entries outside the band of
/// b are exact zeros. Throws on non-square input.
Bidiagonalization bidiagonalize(const Matrix& r, FlopCounter* flops = nullptr);

/// True when every entry of m below the diagonal or right of the first
/// superdiagonal has magnitude <= tol_abs.
bool is_upper_bidiagonal(const Matrix& m, double tol_abs);

}  // namespace costlab::linalg
