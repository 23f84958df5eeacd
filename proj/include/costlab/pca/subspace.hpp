#pragma once

#include "costlab/linalg/matrix.hpp"

namespace costlab::pca {

/// Orthonormal basis for the column span of a (thin QR).
linalg::Matrix orthonormal_columns(const linalg::Matrix& a);

/// Largest principal angle (radians) between the column spans of a and b.
/// Both inputs must have full column rank and the same column count.
double largest_principal_angle(const linalg::Matrix& a,
                               const linalg::Matrix& b);

}  // namespace costlab::pca
