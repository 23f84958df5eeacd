#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "costlab/linalg/matrix.hpp"

namespace costlab::pca {

using linalg::FlopCounter;
using linalg::Matrix;

enum class MethodTag { CovEig, SvdBidiag, Ssvd, Ppca };

const char* method_name(MethodTag tag);

/// Result of any of the PCA methods. `components` holds one unit-norm
/// principal component per column (rank-deficient trailing columns are
/// zero-padded and flagged); `values` are on the covariance-eigenvalue scale
/// (squared singular values of the centered matrix), descending. Component
/// columns are sign-fixed so their largest-magnitude entry is positive.
struct PCAResult {
  Matrix components;           // dims x target_dims
  std::vector<double> values;  // target_dims, descending, non-negative
  std::vector<double> mean;    // dims
  std::size_t iterations_used = 0;
  MethodTag method = MethodTag::CovEig;
  // Diagnostics.
  bool converged = true;
  bool rank_deficient = false;
  std::vector<double> error_trace;  // PPCA: 1-norm reconstruction error per
                                    // iteration, empty for other methods
};

struct SsvdParams {
  std::size_t target_dims = 1;
  std::size_t oversample = 5;   // extra random samples beyond target_dims
  std::size_t power_iters = 2;  // rounds of (A A') sharpening
  std::uint64_t seed = 0;
};

enum class PpcaMode { Standard, Recompute };

struct PpcaParams {
  std::size_t target_dims = 1;
  std::size_t max_iter = 100;
  double tol = 1e-6;  // relative-change threshold on the reconstruction error
  PpcaMode mode = PpcaMode::Standard;
  std::uint64_t seed = 0;
};

/// Per-stage flop counts recorded during a method run, consumed by the
/// execution-cost simulator. Stage names are fixed per method.
struct StageFlops {
  std::string name;
  std::uint64_t flops = 0;
};

struct PpcaIterationFlops {
  std::uint64_t total = 0;              // whole EM iteration
  std::uint64_t latent_projection = 0;  // computing the hidden-state matrix
};

struct MethodTrace {
  std::vector<StageFlops> stages;
  std::vector<PpcaIterationFlops> iterations;  // PPCA only

  std::uint64_t stage(const std::string& name) const;
  std::uint64_t total() const;
};

}  // namespace costlab::pca
