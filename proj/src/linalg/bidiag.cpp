#include "costlab/linalg/bidiag.hpp"

#include <cmath>

#include "costlab/linalg/givens.hpp"

namespace costlab::linalg {

Bidiagonalization bidiagonalize(const Matrix& r, FlopCounter* flops) {
  if (r.rows() != r.cols()) {
    throw InvalidInputError("bidiagonalize: matrix must be square, got " +
                            std::to_string(r.rows()) + "x" +
                            std::to_string(r.cols()));
  }
  const std::size_t n = r.rows();
  Matrix work = r;
  Matrix u1 = Matrix::identity(n);
  Matrix v1 = Matrix::identity(n);

  for (std::size_t k = 0; k < n; ++k) {
    // Clear column k below the diagonal with row rotations (accumulate U1).
    for (std::size_t i = n; i-- > k + 1;) {
      if (work(i, k) == 0.0) continue;
      const auto [c, s, rr] = givens(work(k, k), work(i, k), flops);
      rotate_rows(work, k, i, c, s, flops);
      work(k, k) = rr;
      work(i, k) = 0.0;
      rotate_cols(u1, k, i, c, s, flops);  // u1 <- u1 * G'
    }
    // Clear row k right of the superdiagonal with column rotations
    // (accumulate V1).
    for (std::size_t j = n; k + 2 <= n && j-- > k + 2;) {
      if (work(k, j) == 0.0) continue;
      const auto [c, s, rr] = givens(work(k, k + 1), work(k, j), flops);
      rotate_cols(work, k + 1, j, c, s, flops);
      work(k, k + 1) = rr;
      work(k, j) = 0.0;
      rotate_rows(v1, k + 1, j, c, s, flops);  // v1 <- H' * v1
    }
  }

  ensure_finite(work, "bidiagonalize (B)");
  ensure_finite(u1, "bidiagonalize (U1)");
  ensure_finite(v1, "bidiagonalize (V1)");
  return {std::move(u1), std::move(work), std::move(v1)};
}

bool is_upper_bidiagonal(const Matrix& m, double tol_abs) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const bool on_band = (i == j) || (j == i + 1);
      if (!on_band && std::fabs(m(i, j)) > tol_abs) return false;
    }
  }
  return true;
}

}  // namespace costlab::linalg
