#include "costlab/sim/partition.hpp"

#include <string>

namespace costlab::sim {

std::vector<WorkerPartition> partition_rows(std::size_t n, std::size_t p) {
  if (p == 0) throw InvalidInputError("partition_rows: zero workers");
  if (p > n) {
    throw InvalidInputError("partition_rows: more workers (" +
                            std::to_string(p) + ") than rows (" +
                            std::to_string(n) + ")");
  }
  std::vector<WorkerPartition> parts;
  parts.reserve(p);
  const std::size_t base = n / p;
  const std::size_t extra = n % p;
  std::size_t begin = 0;
  for (std::size_t w = 0; w < p; ++w) {
    const std::size_t count = base + (w < extra ? 1 : 0);
    parts.push_back({w, begin, begin + count});
    begin += count;
  }
  return parts;
}

}  // namespace costlab::sim
