#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "costlab/harness/matrix_io.hpp"
#include "costlab/pca/types.hpp"

namespace costlab::harness {

enum class SweepAxis { N, Dims, TargetD, Workers };

SweepAxis parse_sweep_axis(std::string_view token);
const char* sweep_axis_name(SweepAxis axis);
pca::MethodTag parse_method(std::string_view token);
pca::PpcaMode parse_ppca_mode(std::string_view token);

/// One experiment: a dataset (synthetic parameters or an input file), a
/// method with its parameters, a worker count, and an optional sweep axis.
/// Field names match the config-file keys and CLI flags.
struct ExperimentConfig {
  // Dataset; a non-empty input path overrides the synthetic parameters.
  std::string input;
  MatrixFileFormat input_format = MatrixFileFormat::Csv;
  std::size_t n = 64;
  std::size_t d_dims = 8;
  std::size_t rank = 2;
  double noise = 0.0;
  std::uint64_t seed = 0;

  // Method.
  pca::MethodTag method = pca::MethodTag::CovEig;
  std::size_t target_d = 2;
  std::size_t p = 5;          // SSVD oversampling
  std::size_t j = 2;          // SSVD power iterations
  std::size_t iters = 100;    // PPCA max iterations
  double tol = 1e-6;          // PPCA stopping tolerance
  pca::PpcaMode mode = pca::PpcaMode::Standard;

  // Execution.
  std::size_t workers = 1;

  // Sweep (>= 3 strictly increasing values when an axis is set).
  std::optional<SweepAxis> axis;
  std::vector<std::size_t> values;

  // Output.
  std::string out;                   // empty: no report file
  std::string format = "json";      // json | csv
  bool allow_large = false;          // bypasses the element-count guardrail
};

struct SweepRow {
  double axis_value = 0.0;  // 0 when no sweep axis is set
  std::uint64_t total_flops = 0;
  std::uint64_t total_intermediate_elements = 0;
  double subspace_error = 0.0;  // largest principal angle vs the exact method
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::optional<double> flop_exponent;  // present with >= 3 sweep points
  std::optional<double> comm_exponent;
  std::vector<std::pair<std::string, std::string>> params_echo;
};

/// Element-count guardrail for a single dataset: 1e7 unless the
/// PCA_COSTLAB_MAX_ELEMS environment variable overrides it.
std::uint64_t max_elements_limit();

/// Parses a flat key=value config file on top of the defaults. Unknown keys
/// and malformed values throw ParseError with the line number.
ExperimentConfig load_config_file(const std::string& path);

void validate_config(const ExperimentConfig& config);

/// Runs every sweep point through the cost simulator, computes the subspace
/// error against the covariance-eigendecomposition oracle, fits the scaling
/// exponents, writes the report to config.out (when set) and a short summary
/// to *summary (when set). A failing sweep point aborts with the point named
/// in the exception message.
SweepReport run_experiment(const ExperimentConfig& config,
                           std::ostream* summary = nullptr);

std::string sweep_report_json(const SweepReport& report);
std::string sweep_report_csv(const SweepReport& report);

}  // namespace costlab::harness
