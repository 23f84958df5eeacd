#include "costlab/linalg/qr.hpp"

#include <vector>

#include "costlab/linalg/givens.hpp"

namespace costlab::linalg {

namespace {

// Rotate only columns [first_col, cols) of the row pair; entries to the left
// are already zero in both rows.
void rotate_row_tail(Matrix& m, std::size_t i, std::size_t j,
                     std::size_t first_col, double c, double s,
                     FlopCounter* flops) {
  const std::size_t n = m.cols();
  for (std::size_t k = first_col; k < n; ++k) {
    const double x = m(i, k);
    const double y = m(j, k);
    m(i, k) = c * x + s * y;
    m(j, k) = -s * x + c * y;
  }
  if (flops) {
    const std::uint64_t span = n - first_col;
    flops->muls += 4 * span;
    flops->adds += 2 * span;
  }
}

}  // namespace

QrFactors qr_decompose(const Matrix& z, FlopCounter* flops) {
  const std::size_t rows = z.rows();
  const std::size_t cols = z.cols();
  if (rows < cols) {
    throw InvalidInputError("qr_decompose: need rows >= cols, got " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (z.empty()) throw InvalidInputError("qr_decompose: empty matrix");

  Matrix work = z;
  std::vector<GivensRotation> rots;
  rots.reserve(rows * cols);

  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = rows; i-- > j + 1;) {
      if (work(i, j) == 0.0) continue;
      const auto [c, s, r] = givens(work(j, j), work(i, j), flops);
      rotate_row_tail(work, j, i, j, c, s, flops);
      work(j, j) = r;
      work(i, j) = 0.0;
      rots.push_back({j, i, c, s});  // pivot row j < zeroed row i
    }
  }

  // Thin Q = (product of transposed rotations) applied to the first `cols`
  // columns of the identity, replayed in reverse order.
  Matrix q(rows, cols, 0.0);
  for (std::size_t j = 0; j < cols; ++j) q(j, j) = 1.0;
  for (std::size_t k = rots.size(); k-- > 0;) {
    const GivensRotation& rot = rots[k];
    const std::size_t n = q.cols();
    for (std::size_t col = 0; col < n; ++col) {
      const double x = q(rot.i, col);
      const double y = q(rot.j, col);
      q(rot.i, col) = rot.c * x - rot.s * y;
      q(rot.j, col) = rot.s * x + rot.c * y;
    }
    if (flops) {
      flops->muls += 4 * static_cast<std::uint64_t>(n);
      flops->adds += 2 * static_cast<std::uint64_t>(n);
    }
  }

  Matrix r(cols, cols, 0.0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = i; j < cols; ++j) r(i, j) = work(i, j);

  // Sign convention: non-negative diagonal of R.
  for (std::size_t k = 0; k < cols; ++k) {
    if (r(k, k) < 0.0) {
      for (std::size_t j = k; j < cols; ++j) r(k, j) = -r(k, j);
      for (std::size_t i = 0; i < rows; ++i) q(i, k) = -q(i, k);
    }
  }

  ensure_finite(q, "qr_decompose (Q)");
  ensure_finite(r, "qr_decompose (R)");
  return {std::move(q), std::move(r)};
}

}  // namespace costlab::linalg
