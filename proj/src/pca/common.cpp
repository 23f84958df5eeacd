#include "costlab/pca/types.hpp"

namespace costlab::pca {

const char* method_name(MethodTag tag) {
  switch (tag) {
    case MethodTag::CovEig:
      return "coveig";
    case MethodTag::SvdBidiag:
      return "svd";
    case MethodTag::Ssvd:
      return "ssvd";
    case MethodTag::Ppca:
      return "ppca";
  }
  return "unknown";
}

std::uint64_t MethodTrace::stage(const std::string& name) const {
  for (const auto& s : stages)
    if (s.name == name) return s.flops;
  return 0;
}

std::uint64_t MethodTrace::total() const {
  std::uint64_t acc = 0;
  for (const auto& s : stages) acc += s.flops;
  for (const auto& it : iterations) acc += it.total;
  return acc;
}

}  // namespace costlab::pca
