#pragma once

#include <vector>

#include "costlab/linalg/matrix.hpp"

namespace costlab::linalg {

struct EigenPairs {
  std::vector<double> values;  // descending
  Matrix vectors;              // one unit-norm eigenvector per column
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations:
/// s = vectors * diag(values) * vectors'. Sweeps run until the off-diagonal
/// Frobenius norm drops below tol * ||s||_F. Throws InvalidInputError when
/// the input is asymmetric beyond 1e-9 relative, ConvergenceError after
/// max_sweeps sweeps without convergence.
EigenPairs sym_eig(const Matrix& s, double tol = 1e-12,
                   std::size_t max_sweeps = 100, FlopCounter* flops = nullptr);

}  // namespace costlab::linalg
