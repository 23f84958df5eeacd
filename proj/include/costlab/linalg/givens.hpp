#pragma once

#include <cstddef>

#include "costlab/linalg/matrix.hpp"

namespace costlab::linalg {

/// Plane rotation acting on index pair (i, j), i < j. c*c + s*s == 1.
struct GivensRotation {
  std::size_t i = 0;
  std::size_t j = 0;
  double c = 1.0;
  double s = 0.0;
};

struct GivensCoefficients {
  double c;
  double s;
  double r;
};

/// Coefficients (c, s, r) with [c s; -s c] * [a; b] = [r; 0] and r computed
/// overflow-safely as hypot(a, b). b == 0 returns the identity rotation with
/// r = a (so (0, 0) maps to c=1, s=0, r=0).
GivensCoefficients givens(double a, double b, FlopCounter* flops = nullptr);

/// Row update: row_i <- c*row_i + s*row_j, row_j <- -s*row_i + c*row_j.
void rotate_rows(Matrix& m, std::size_t i, std::size_t j, double c, double s,
                 FlopCounter* flops = nullptr);

/// Column update: col_p <- c*col_p + s*col_q, col_q <- -s*col_p + c*col_q.
void rotate_cols(Matrix& m, std::size_t p, std::size_t q, double c, double s,
                 FlopCounter* flops = nullptr);

}  // namespace costlab::linalg
