#include "costlab/pca/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "costlab/linalg/jacobi.hpp"
#include "costlab/linalg/qr.hpp"

namespace costlab::pca {

using linalg::Matrix;

Matrix orthonormal_columns(const Matrix& a) {
  return linalg::qr_decompose(a).q;
}

double largest_principal_angle(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInputError("largest_principal_angle: shape mismatch");
  if (a.cols() == 0) throw InvalidInputError("largest_principal_angle: empty");
  const Matrix qa = orthonormal_columns(a);
  const Matrix qb = orthonormal_columns(b);
  const Matrix overlap = linalg::matmul(linalg::transpose(qa), qb);
  // Smallest singular value of the overlap = cosine of the largest angle.
  const linalg::EigenPairs eig =
      linalg::sym_eig(linalg::matmul(linalg::transpose(overlap), overlap));
  const double smallest = std::max(eig.values.back(), 0.0);
  const double cosine = std::clamp(std::sqrt(smallest), 0.0, 1.0);
  return std::acos(cosine);
}

}  // namespace costlab::pca
