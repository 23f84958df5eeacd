#pragma once

#include <vector>

#include "costlab/linalg/matrix.hpp"

namespace costlab::linalg {

struct SvdResult {
  Matrix u;                   // left singular vectors, one per column
  std::vector<double> sigma;  // non-negative, descending
  Matrix v;                   // right singular vectors, one per column
};

/// SVD of a square upper-bidiagonal matrix by implicit-shift QR iteration
/// (Golub-Kahan steps with Wilkinson shifts, plus the usual deflation chases
/// for exact zeros on the diagonal). Returns b = u * diag(sigma) * v'.
///
/// A superdiagonal entry is treated as converged once
/// |f_i| <= tol * (|d_i| + |d_{i+1}|). The iteration budget is
/// max_sweeps * n implicit steps; exhausting it throws ConvergenceError
/// carrying the remaining superdiagonal 2-norm.
SvdResult bidiag_svd(const Matrix& b, double tol = 1e-12,
                     std::size_t max_sweeps = 100,
                     FlopCounter* flops = nullptr);

}  // namespace costlab::linalg
