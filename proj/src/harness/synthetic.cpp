#include "costlab/harness/synthetic.hpp"

#include <algorithm>
#include <string>

#include "costlab/linalg/rng.hpp"

namespace costlab::harness {

using linalg::Matrix;

Matrix gen_synthetic(std::size_t n, std::size_t dims, std::size_t rank,
                     double noise_sigma, std::uint64_t seed) {
  if (n == 0 || dims == 0)
    throw InvalidInputError("gen_synthetic: empty shape");
  if (rank < 1 || rank > std::min(n, dims)) {
    throw InvalidInputError("gen_synthetic: rank must be in [1, " +
                            std::to_string(std::min(n, dims)) + "]");
  }
  if (noise_sigma < 0.0)
    throw InvalidInputError("gen_synthetic: negative noise_sigma");

  linalg::GaussianSampler sampler(seed);
  const Matrix g1 = sampler.sample_matrix(n, rank);
  const Matrix g2 = sampler.sample_matrix(dims, rank);

  Matrix a(n, dims);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dims; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < rank; ++k) acc += g1(i, k) * g2(j, k);
      a(i, j) = acc;
    }
  }
  if (noise_sigma > 0.0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < dims; ++j)
        a(i, j) += noise_sigma * sampler.next();
  }
  linalg::ensure_finite(a, "gen_synthetic");
  return a;
}

}  // namespace costlab::harness
