#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "costlab/pca/methods.hpp"
#include "costlab/sim/cost_report.hpp"
#include "costlab/sim/partition.hpp"

namespace costlab::sim {

struct CovEigParams {
  std::size_t target_dims = 1;
};

struct SvdBidiagParams {
  std::size_t target_dims = 1;
};

using MethodParams =
    std::variant<CovEigParams, SvdBidiagParams, pca::SsvdParams, pca::PpcaParams>;

pca::MethodTag method_tag(const MethodParams& method);

/// Runs the selected method over `workers` logical row partitions and
/// returns the result together with the execution-cost ledger. The
/// simulation only changes accounting, never arithmetic: the PCAResult is
/// bit-identical to the direct in-memory operation for every worker count.
std::pair<pca::PCAResult, CostReport> run_phased(const MethodParams& method,
                                                 const linalg::Matrix& a,
                                                 std::size_t workers);

/// Least-squares slope of log(measure) against log(scale). Requires at
/// least three strictly positive points.
double fit_scaling_exponent(
    const std::vector<std::pair<double, double>>& series);

}  // namespace costlab::sim
