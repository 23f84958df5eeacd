#pragma once

#include <cmath>

#include "costlab/linalg/matrix.hpp"

namespace costlab::pca::internal {

// Flip each column so its largest-magnitude entry (first such on ties) is
// positive. Makes component comparisons across methods deterministic.
inline void sign_fix_columns(linalg::Matrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t best = 0;
    double best_abs = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double a = std::fabs(m(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (m(best, j) < 0.0)
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
  }
}

inline void clamp_non_negative(std::vector<double>& v) {
  for (double& x : v)
    if (x < 0.0) x = 0.0;
}

}  // namespace costlab::pca::internal
