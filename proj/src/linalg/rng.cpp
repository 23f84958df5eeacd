#include "costlab/linalg/rng.hpp"

#include <cmath>
#include <numbers>

namespace costlab::linalg {

double GaussianSampler::uniform01() {
  // 53 random bits mapped to (0, 1].
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double GaussianSampler::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Matrix GaussianSampler::sample_matrix(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = next();
  return m;
}

}  // namespace costlab::linalg
