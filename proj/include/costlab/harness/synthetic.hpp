#pragma once

#include <cstdint>

#include "costlab/linalg/matrix.hpp"

namespace costlab::harness {

/// Synthetic dataset A = G1 * G2' + noise_sigma * E with G1 (n x rank),
/// G2 (dims x rank) and E (n x dims) i.i.d. standard normal, all drawn from
/// one seeded stream (G1, then G2, then E; E is skipped entirely when
/// noise_sigma is 0). Deterministic per seed.
linalg::Matrix gen_synthetic(std::size_t n, std::size_t dims, std::size_t rank,
                             double noise_sigma, std::uint64_t seed);

}  // namespace costlab::harness
