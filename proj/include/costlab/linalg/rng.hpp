#pragma once

#include <cstdint>
#include <random>

#include "costlab/linalg/matrix.hpp"

namespace costlab::linalg {

/// Seeded standard-normal sampler. Uses mt19937_64 with a hand-rolled
/// Box-Muller transform so that a given seed produces the same stream on
/// every platform (std::normal_distribution is implementation-defined).
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double next();

  /// rows x cols matrix of i.i.d. standard normals, filled row-major.
  Matrix sample_matrix(std::size_t rows, std::size_t cols);

 private:
  double uniform01();  // in (0, 1]

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace costlab::linalg
