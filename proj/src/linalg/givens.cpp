#include "costlab/linalg/givens.hpp"

#include <cmath>

namespace costlab::linalg {

GivensCoefficients givens(double a, double b, FlopCounter* flops) {
  if (b == 0.0) {
    return {1.0, 0.0, a};
  }
  const double r = std::hypot(a, b);
  if (flops) {
    flops->muls += 2;
    flops->adds += 1;
    flops->divs_sqrts += 3;  // sqrt inside hypot plus the two divisions
  }
  return {a / r, b / r, r};
}

void rotate_rows(Matrix& m, std::size_t i, std::size_t j, double c, double s,
                 FlopCounter* flops) {
  const std::size_t n = m.cols();
  for (std::size_t k = 0; k < n; ++k) {
    const double x = m(i, k);
    const double y = m(j, k);
    m(i, k) = c * x + s * y;
    m(j, k) = -s * x + c * y;
  }
  if (flops) {
    flops->muls += 4 * static_cast<std::uint64_t>(n);
    flops->adds += 2 * static_cast<std::uint64_t>(n);
  }
}

void rotate_cols(Matrix& m, std::size_t p, std::size_t q, double c, double s,
                 FlopCounter* flops) {
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const double x = m(k, p);
    const double y = m(k, q);
    m(k, p) = c * x + s * y;
    m(k, q) = -s * x + c * y;
  }
  if (flops) {
    flops->muls += 4 * static_cast<std::uint64_t>(n);
    flops->adds += 2 * static_cast<std::uint64_t>(n);
  }
}

}  // namespace costlab::linalg
