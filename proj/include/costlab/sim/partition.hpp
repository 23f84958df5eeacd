#pragma once

#include <cstddef>
#include <vector>

#include "costlab/errors.hpp"

namespace costlab::sim {

/// Half-open row range owned by one logical worker.
struct WorkerPartition {
  std::size_t worker_id = 0;
  std::size_t row_begin = 0;
  std::size_t row_end = 0;

  std::size_t row_count() const noexcept { return row_end - row_begin; }
};

/// Balanced disjoint cover of n rows by p workers; sizes differ by at most
/// one, larger shares first. Throws when p == 0 or p > n.
std::vector<WorkerPartition> partition_rows(std::size_t n, std::size_t p);

}  // namespace costlab::sim
