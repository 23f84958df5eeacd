#include <exception>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "costlab/harness/experiment.hpp"
#include "costlab/harness/matrix_io.hpp"
#include "costlab/harness/synthetic.hpp"

namespace {

using costlab::harness::ExperimentConfig;

// Token targets for the enum-valued flags; converted after parsing.
struct FlagTokens {
  std::string method;
  std::string mode;
  std::string input_format;
  std::string axis;
  std::string values;
};

void add_experiment_flags(CLI::App* cmd, ExperimentConfig& config,
                          FlagTokens& tokens) {
  cmd->add_option("--method", tokens.method, "coveig | svd | ssvd | ppca");
  cmd->add_option("--n", config.n, "dataset rows");
  cmd->add_option("--d-dims", config.d_dims, "dataset columns");
  cmd->add_option("--rank", config.rank, "synthetic data rank");
  cmd->add_option("--noise", config.noise, "synthetic noise sigma");
  cmd->add_option("--target-d", config.target_d, "principal components to keep");
  cmd->add_option("--p", config.p, "ssvd oversampling");
  cmd->add_option("--j", config.j, "ssvd power iterations");
  cmd->add_option("--iters", config.iters, "ppca max EM iterations");
  cmd->add_option("--tol", config.tol, "ppca stopping tolerance");
  cmd->add_option("--mode", tokens.mode, "ppca mode: standard | recompute");
  cmd->add_option("--workers", config.workers, "simulated worker count");
  cmd->add_option("--seed", config.seed, "random seed");
  cmd->add_option("--input", config.input, "load dataset from file");
  cmd->add_option("--input-format", tokens.input_format, "matrix-market | csv");
  cmd->add_option("--out", config.out, "report output path");
  cmd->add_option("--format", config.format, "report format: json | csv");
  cmd->add_flag("--allow-large", config.allow_large,
                "bypass the element-count guardrail");
}

void resolve_tokens(const CLI::App* cmd, const FlagTokens& tokens,
                    ExperimentConfig& config) {
  namespace h = costlab::harness;
  auto given = [&](const char* name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--method")) config.method = h::parse_method(tokens.method);
  if (given("--mode")) config.mode = h::parse_ppca_mode(tokens.mode);
  if (given("--input-format"))
    config.input_format = h::parse_matrix_format(tokens.input_format);
  if (given("--axis")) config.axis = h::parse_sweep_axis(tokens.axis);
  if (given("--values")) {
    config.values.clear();
    std::stringstream ss(tokens.values);
    std::string cell;
    while (std::getline(ss, cell, ','))
      config.values.push_back(std::stoull(cell));
  }
}

// --config is honored by loading the file before the real parse, so that
// explicit flags override file values.
std::string peek_config_path(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") return argv[i + 1];
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig config;
  const std::string cfg_path = peek_config_path(argc, argv);
  try {
    if (!cfg_path.empty()) config = costlab::harness::load_config_file(cfg_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  CLI::App app{"pca-costlab: PCA methods with distributed-cost accounting"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  std::size_t gen_n = 64, gen_dims = 8, gen_rank = 2;
  double gen_noise = 0.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::string gen_format = "csv";
  gen->add_option("--n", gen_n, "rows");
  gen->add_option("--d-dims", gen_dims, "columns");
  gen->add_option("--rank", gen_rank, "rank of the low-rank part");
  gen->add_option("--noise", gen_noise, "noise sigma");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output path")->required();
  gen->add_option("--format", gen_format, "matrix-market | csv");

  std::string cfg_path_sink;  // registered so --config parses cleanly
  FlagTokens run_tokens, sweep_tokens;

  auto* run = app.add_subcommand("run", "run one experiment point");
  run->add_option("--config", cfg_path_sink, "key=value config file");
  add_experiment_flags(run, config, run_tokens);

  auto* sweep = app.add_subcommand("sweep", "run a scaling sweep");
  sweep->add_option("--config", cfg_path_sink, "key=value config file");
  add_experiment_flags(sweep, config, sweep_tokens);
  sweep->add_option("--axis", sweep_tokens.axis,
                    "n | d_dims | target_d | workers");
  sweep->add_option("--values", sweep_tokens.values,
                    "comma-separated strictly increasing values");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto m = costlab::harness::gen_synthetic(gen_n, gen_dims, gen_rank,
                                                     gen_noise, gen_seed);
      costlab::harness::save_matrix(
          m, gen_out, costlab::harness::parse_matrix_format(gen_format));
      std::cout << "wrote " << m.rows() << "x" << m.cols() << " matrix to "
                << gen_out << '\n';
      return 0;
    }

    if (run->parsed()) {
      resolve_tokens(run, run_tokens, config);
      config.axis.reset();  // `run` is always a single point
      config.values.clear();
    } else {
      resolve_tokens(sweep, sweep_tokens, config);
    }
    costlab::harness::run_experiment(config, &std::cout);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
