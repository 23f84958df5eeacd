#include "costlab/harness/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "costlab/format.hpp"
#include "costlab/harness/synthetic.hpp"
#include "costlab/pca/subspace.hpp"
#include "costlab/sim/simulator.hpp"

namespace costlab::harness {

using linalg::Matrix;
using ordered_json = nlohmann::ordered_json;

SweepAxis parse_sweep_axis(std::string_view token) {
  if (token == "n") return SweepAxis::N;
  if (token == "d_dims") return SweepAxis::Dims;
  if (token == "target_d") return SweepAxis::TargetD;
  if (token == "workers") return SweepAxis::Workers;
  throw InvalidInputError("unknown sweep axis '" + std::string(token) +
                          "' (expected n, d_dims, target_d or workers)");
}

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::N:
      return "n";
    case SweepAxis::Dims:
      return "d_dims";
    case SweepAxis::TargetD:
      return "target_d";
    case SweepAxis::Workers:
      return "workers";
  }
  return "unknown";
}

pca::MethodTag parse_method(std::string_view token) {
  if (token == "coveig") return pca::MethodTag::CovEig;
  if (token == "svd") return pca::MethodTag::SvdBidiag;
  if (token == "ssvd") return pca::MethodTag::Ssvd;
  if (token == "ppca") return pca::MethodTag::Ppca;
  throw InvalidInputError("unknown method '" + std::string(token) +
                          "' (expected coveig, svd, ssvd or ppca)");
}

pca::PpcaMode parse_ppca_mode(std::string_view token) {
  if (token == "standard") return pca::PpcaMode::Standard;
  if (token == "recompute") return pca::PpcaMode::Recompute;
  throw InvalidInputError("unknown mode '" + std::string(token) +
                          "' (expected standard or recompute)");
}

std::uint64_t max_elements_limit() {
  if (const char* env = std::getenv("PCA_COSTLAB_MAX_ELEMS")) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && errno != ERANGE && v > 0)
      return static_cast<std::uint64_t>(v);
    throw InvalidInputError("PCA_COSTLAB_MAX_ELEMS is not a positive integer");
  }
  return 10'000'000;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::uint64_t parse_count(const std::string& value, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE)
    throw ParseError("expected a non-negative integer, got '" + value + "'",
                     line);
  return static_cast<std::uint64_t>(v);
}

double parse_real(const std::string& value, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE)
    throw ParseError("expected a number, got '" + value + "'", line);
  return v;
}

bool parse_bool(const std::string& value, std::size_t line) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ParseError("expected true/false, got '" + value + "'", line);
}

std::vector<std::size_t> parse_count_list(const std::string& value,
                                          std::size_t line) {
  std::vector<std::size_t> out;
  std::stringstream ss(value);
  std::string cell;
  while (std::getline(ss, cell, ','))
    out.push_back(static_cast<std::size_t>(parse_count(trim(cell), line)));
  if (out.empty()) throw ParseError("empty value list", line);
  return out;
}

void apply_key(ExperimentConfig& config, const std::string& key,
               const std::string& value, std::size_t line) {
  try {
    if (key == "method") {
      config.method = parse_method(value);
    } else if (key == "n") {
      config.n = parse_count(value, line);
    } else if (key == "d_dims") {
      config.d_dims = parse_count(value, line);
    } else if (key == "rank") {
      config.rank = parse_count(value, line);
    } else if (key == "noise") {
      config.noise = parse_real(value, line);
    } else if (key == "seed") {
      config.seed = parse_count(value, line);
    } else if (key == "target_d") {
      config.target_d = parse_count(value, line);
    } else if (key == "p") {
      config.p = parse_count(value, line);
    } else if (key == "j") {
      config.j = parse_count(value, line);
    } else if (key == "iters") {
      config.iters = parse_count(value, line);
    } else if (key == "tol") {
      config.tol = parse_real(value, line);
    } else if (key == "mode") {
      config.mode = parse_ppca_mode(value);
    } else if (key == "workers") {
      config.workers = parse_count(value, line);
    } else if (key == "axis") {
      config.axis = parse_sweep_axis(value);
    } else if (key == "values") {
      config.values = parse_count_list(value, line);
    } else if (key == "input") {
      config.input = value;
    } else if (key == "input_format") {
      config.input_format = parse_matrix_format(value);
    } else if (key == "out") {
      config.out = value;
    } else if (key == "format") {
      config.format = value;
    } else if (key == "allow_large") {
      config.allow_large = parse_bool(value, line);
    } else {
      throw ParseError("unknown config key '" + key + "'", line);
    }
  } catch (const InvalidInputError& e) {
    throw ParseError(e.what(), line);
  }
}

pca::MethodTag oracle_free_tag() { return pca::MethodTag::CovEig; }

sim::MethodParams method_params(const ExperimentConfig& config) {
  switch (config.method) {
    case pca::MethodTag::CovEig:
      return sim::CovEigParams{config.target_d};
    case pca::MethodTag::SvdBidiag:
      return sim::SvdBidiagParams{config.target_d};
    case pca::MethodTag::Ssvd:
      return pca::SsvdParams{config.target_d, config.p, config.j, config.seed};
    case pca::MethodTag::Ppca:
      return pca::PpcaParams{config.target_d, config.iters, config.tol,
                             config.mode, config.seed};
  }
  throw InvalidInputError("run_experiment: bad method tag");
}

ExperimentConfig point_config(const ExperimentConfig& base, SweepAxis axis,
                              std::size_t value) {
  ExperimentConfig cfg = base;
  switch (axis) {
    case SweepAxis::N:
      cfg.n = value;
      break;
    case SweepAxis::Dims:
      cfg.d_dims = value;
      break;
    case SweepAxis::TargetD:
      cfg.target_d = value;
      break;
    case SweepAxis::Workers:
      cfg.workers = value;
      break;
  }
  return cfg;
}

SweepRow run_point(const ExperimentConfig& cfg) {
  const std::uint64_t elems =
      static_cast<std::uint64_t>(cfg.n) * static_cast<std::uint64_t>(cfg.d_dims);
  if (cfg.input.empty() && elems > max_elements_limit() && !cfg.allow_large) {
    throw InvalidInputError(
        "dataset of " + std::to_string(elems) +
        " elements exceeds the guardrail (" +
        std::to_string(max_elements_limit()) +
        "); pass allow_large=true or set PCA_COSTLAB_MAX_ELEMS");
  }
  const Matrix data =
      cfg.input.empty()
          ? gen_synthetic(cfg.n, cfg.d_dims, cfg.rank, cfg.noise, cfg.seed)
          : load_matrix(cfg.input, cfg.input_format);

  auto [result, cost] = sim::run_phased(method_params(cfg), data, cfg.workers);

  SweepRow row;
  row.total_flops = cost.total_flops;
  row.total_intermediate_elements = cost.total_intermediate_elements;
  if (cfg.method == oracle_free_tag()) {
    row.subspace_error = 0.0;  // this method is the oracle
  } else {
    const pca::PCAResult oracle = pca::pca_cov_eig(data, cfg.target_d);
    row.subspace_error =
        pca::largest_principal_angle(result.components, oracle.components);
  }
  return row;
}

std::vector<std::pair<std::string, std::string>> build_echo(
    const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> echo;
  echo.emplace_back("method", pca::method_name(config.method));
  echo.emplace_back("n", std::to_string(config.n));
  echo.emplace_back("d_dims", std::to_string(config.d_dims));
  echo.emplace_back("target_d", std::to_string(config.target_d));
  echo.emplace_back("workers", std::to_string(config.workers));
  if (config.input.empty()) {
    echo.emplace_back("rank", std::to_string(config.rank));
    echo.emplace_back("noise", format_g17(config.noise));
    echo.emplace_back("seed", std::to_string(config.seed));
  } else {
    echo.emplace_back("input", config.input);
  }
  if (config.method == pca::MethodTag::Ssvd) {
    echo.emplace_back("p", std::to_string(config.p));
    echo.emplace_back("j", std::to_string(config.j));
  }
  if (config.method == pca::MethodTag::Ppca) {
    echo.emplace_back("iters", std::to_string(config.iters));
    echo.emplace_back("tol", format_g17(config.tol));
    echo.emplace_back(
        "mode", config.mode == pca::PpcaMode::Standard ? "standard" : "recompute");
  }
  echo.emplace_back("sweep_axis",
                    config.axis ? sweep_axis_name(*config.axis) : "none");
  return echo;
}

}  // namespace

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open config '" + path + "'");
  ExperimentConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value, got '" + t + "'", line_no);
    apply_key(config, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), line_no);
  }
  return config;
}

void validate_config(const ExperimentConfig& config) {
  if (config.format != "json" && config.format != "csv")
    throw InvalidInputError("format must be json or csv");
  if (config.workers < 1) throw InvalidInputError("workers must be >= 1");
  if (config.target_d < 1) throw InvalidInputError("target_d must be >= 1");
  if (config.axis.has_value() != !config.values.empty()) {
    throw InvalidInputError(
        "sweep axis and values must be given together (or neither)");
  }
  if (config.axis) {
    if (config.values.size() < 3)
      throw InvalidInputError("a sweep needs at least 3 values");
    for (std::size_t i = 1; i < config.values.size(); ++i)
      if (config.values[i] <= config.values[i - 1])
        throw InvalidInputError("sweep values must be strictly increasing");
    if (!config.input.empty() &&
        (*config.axis == SweepAxis::N || *config.axis == SweepAxis::Dims)) {
      throw InvalidInputError(
          "sweeping n or d_dims requires synthetic data, not an input file");
    }
  }
}

SweepReport run_experiment(const ExperimentConfig& config,
                           std::ostream* summary) {
  validate_config(config);

  SweepReport report;
  report.params_echo = build_echo(config);

  if (config.axis) {
    for (const std::size_t value : config.values) {
      const ExperimentConfig cfg = point_config(config, *config.axis, value);
      try {
        SweepRow row = run_point(cfg);
        row.axis_value = static_cast<double>(value);
        report.rows.push_back(row);
      } catch (const std::exception& e) {
        throw std::runtime_error("sweep point " +
                                 std::string(sweep_axis_name(*config.axis)) +
                                 "=" + std::to_string(value) + " failed: " +
                                 e.what());
      }
    }
    std::vector<std::pair<double, double>> flop_series, comm_series;
    for (const SweepRow& row : report.rows) {
      flop_series.emplace_back(row.axis_value,
                               static_cast<double>(row.total_flops));
      comm_series.emplace_back(
          row.axis_value, static_cast<double>(row.total_intermediate_elements));
    }
    report.flop_exponent = sim::fit_scaling_exponent(flop_series);
    report.comm_exponent = sim::fit_scaling_exponent(comm_series);
  } else {
    report.rows.push_back(run_point(config));
  }

  if (!config.out.empty()) {
    std::ofstream out(config.out, std::ios::binary);
    if (!out)
      throw InvalidInputError("cannot open '" + config.out + "' for writing");
    out << (config.format == "json" ? sweep_report_json(report)
                                    : sweep_report_csv(report));
    if (!out) throw InvalidInputError("write to '" + config.out + "' failed");
  }

  if (summary) {
    *summary << "method=" << pca::method_name(config.method)
             << " workers=" << config.workers << " points=" << report.rows.size()
             << '\n';
    for (const SweepRow& row : report.rows) {
      *summary << "  ";
      if (config.axis)
        *summary << sweep_axis_name(*config.axis) << '='
                 << static_cast<std::size_t>(row.axis_value) << ' ';
      *summary << "flops=" << row.total_flops
               << " intermediate_elements=" << row.total_intermediate_elements
               << " subspace_error=" << format_g17(row.subspace_error) << '\n';
    }
    if (report.flop_exponent)
      *summary << "flop_exponent=" << format_g17(*report.flop_exponent) << '\n';
    if (report.comm_exponent)
      *summary << "comm_exponent=" << format_g17(*report.comm_exponent) << '\n';
    if (!config.out.empty())
      *summary << "report written to " << config.out << '\n';
  }
  return report;
}

std::string sweep_report_json(const SweepReport& report) {
  ordered_json doc;
  ordered_json rows = ordered_json::array();
  for (const SweepRow& row : report.rows) {
    ordered_json jr;
    jr["axis_value"] = row.axis_value;
    jr["total_flops"] = row.total_flops;
    jr["total_intermediate_elements"] = row.total_intermediate_elements;
    jr["subspace_error"] = row.subspace_error;
    rows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(rows);
  if (report.flop_exponent) doc["flop_exponent"] = *report.flop_exponent;
  if (report.comm_exponent) doc["comm_exponent"] = *report.comm_exponent;
  ordered_json echo;
  for (const auto& [key, value] : report.params_echo) echo[key] = value;
  doc["params_echo"] = std::move(echo);
  return doc.dump(2) + "\n";
}

std::string sweep_report_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "axis_value,total_flops,total_intermediate_elements,subspace_error\n";
  for (const SweepRow& row : report.rows) {
    out << format_g17(row.axis_value) << ',' << row.total_flops << ','
        << row.total_intermediate_elements << ','
        << format_g17(row.subspace_error) << '\n';
  }
  if (report.flop_exponent)
    out << "# flop_exponent=" << format_g17(*report.flop_exponent) << '\n';
  if (report.comm_exponent)
    out << "# comm_exponent=" << format_g17(*report.comm_exponent) << '\n';
  return out.str();
}

}  // namespace costlab::harness
