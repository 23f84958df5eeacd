#include "costlab/sim/simulator.hpp"

#include <cmath>
#include <string>

#include "costlab/format.hpp"

namespace costlab::sim {

using pca::MethodTag;
using pca::MethodTrace;
using pca::PCAResult;

namespace {

// Exact-sum apportionment of a measured flop total across workers,
// proportional to owned rows; any integer-division deficit lands on the
// driver (worker 0).
std::vector<std::uint64_t> split_by_rows(
    std::uint64_t total, const std::vector<WorkerPartition>& parts,
    std::size_t n_rows) {
  std::vector<std::uint64_t> shares(parts.size(), 0);
  std::uint64_t assigned = 0;
  for (std::size_t w = 0; w < parts.size(); ++w) {
    shares[w] = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(total) * parts[w].row_count()) / n_rows);
    assigned += shares[w];
  }
  shares[0] += total - assigned;
  return shares;
}

std::vector<std::uint64_t> driver_only(std::uint64_t total, std::size_t workers) {
  std::vector<std::uint64_t> shares(workers, 0);
  shares[0] = total;
  return shares;
}

PhasePlan plan_cov_eig(const MethodTrace& trace,
                       const std::vector<WorkerPartition>& parts, std::size_t n,
                       std::size_t dims, std::size_t d) {
  const std::uint64_t p = parts.size();
  PhasePlan plan;
  plan.push_back({"column_sums",
                  split_by_rows(trace.stage("column_sums"), parts, n),
                  {{"column_sums", p * dims}}});
  plan.push_back({"center_gram",
                  split_by_rows(trace.stage("center") + trace.stage("gram"),
                                parts, n),
                  {{"gram_partial", p * dims * dims}}});
  plan.push_back({"eigensolve", driver_only(trace.stage("eig"), parts.size()),
                  {{"components", static_cast<std::uint64_t>(dims) * d}}});
  return plan;
}

PhasePlan plan_svd_bidiag(const MethodTrace& trace,
                          const std::vector<WorkerPartition>& parts,
                          std::size_t n, std::size_t dims, std::size_t d) {
  const std::uint64_t p = parts.size();
  const std::uint64_t dd = static_cast<std::uint64_t>(dims) * d;
  PhasePlan plan;
  plan.push_back({"distributed_qr",
                  split_by_rows(trace.stage("center") + trace.stage("qr"),
                                parts, n),
                  {{"r_partial", p * dims * dims},
                   {"q", static_cast<std::uint64_t>(n) * d}}});
  plan.push_back({"bidiagonalize",
                  driver_only(trace.stage("bidiag"), parts.size()),
                  {{"u1", static_cast<std::uint64_t>(d) * d},
                   {"b", dd},
                   {"v1", static_cast<std::uint64_t>(dims) * dims}}});
  plan.push_back({"bidiagonal_svd",
                  driver_only(trace.stage("bidiag_svd"), parts.size()),
                  {{"u2", static_cast<std::uint64_t>(d) * d},
                   {"sigma", dd},
                   {"v2", static_cast<std::uint64_t>(dims) * dims}}});
  plan.push_back({"assemble", driver_only(trace.stage("assemble"), parts.size()),
                  {{"components", dd}}});
  return plan;
}

PhasePlan plan_ssvd(const MethodTrace& trace,
                    const std::vector<WorkerPartition>& parts, std::size_t n,
                    std::size_t dims, const pca::SsvdParams& params) {
  const std::uint64_t p = parts.size();
  const std::uint64_t l = params.target_dims + params.oversample;
  const std::uint64_t nl = static_cast<std::uint64_t>(n) * l;
  const std::uint64_t dl = static_cast<std::uint64_t>(dims) * l;
  PhasePlan plan;
  plan.push_back({"sample",
                  split_by_rows(trace.stage("center") + trace.stage("sample"),
                                parts, n),
                  {{"omega", dl, true}, {"z_partial", nl}}});
  const std::size_t rounds = params.power_iters;
  std::uint64_t power_left = trace.stage("power");
  for (std::size_t t = 1; t <= rounds; ++t) {
    const std::uint64_t share =
        (t == rounds) ? power_left : trace.stage("power") / rounds;
    power_left -= share;
    plan.push_back({"power_" + std::to_string(t),
                    split_by_rows(share, parts, n),
                    {{"z_partial", nl}, {"atz_partial", dl}}});
  }
  plan.push_back({"qr", split_by_rows(trace.stage("qr"), parts, n),
                  {{"r_partial", p * l * l}, {"q", nl}}});
  plan.push_back({"project", split_by_rows(trace.stage("project"), parts, n),
                  {{"b_partial", p * l * dims}}});
  plan.push_back({"small_eig",
                  driver_only(trace.stage("small_eig"), parts.size()),
                  {{"components",
                    static_cast<std::uint64_t>(dims) * params.target_dims}}});
  return plan;
}

PhasePlan plan_ppca(const MethodTrace& trace,
                    const std::vector<WorkerPartition>& parts, std::size_t n,
                    std::size_t dims, const pca::PpcaParams& params) {
  const std::uint64_t p = parts.size();
  const std::uint64_t d = params.target_dims;
  const std::uint64_t dd = static_cast<std::uint64_t>(dims) * d;
  const std::uint64_t stats = p * (d * d + dd);
  PhasePlan plan;
  for (std::size_t t = 0; t < trace.iterations.size(); ++t) {
    const auto& it = trace.iterations[t];
    Phase phase;
    phase.name = "em_iter_" + std::to_string(t + 1);
    if (params.mode == pca::PpcaMode::Standard) {
      phase.local_flops = split_by_rows(it.total, parts, n);
      phase.emitted = {{"c", dd, true},
                       {"sigma2", 1, true},
                       {"hidden_rows", static_cast<std::uint64_t>(n) * d},
                       {"stats_partial", stats}};
    } else {
      // Hidden states recomputed locally in each of the two passes instead
      // of being shipped.
      phase.local_flops =
          split_by_rows(it.total + 2 * it.latent_projection, parts, n);
      phase.emitted = {{"stats_partial", stats}, {"c", dd, true}};
    }
    plan.push_back(std::move(phase));
  }
  plan.push_back(
      {"finalize", driver_only(trace.stage("finalize"), parts.size()), {}});
  return plan;
}

void append_common_echo(std::vector<std::pair<std::string, std::string>>& echo,
                        std::size_t n, std::size_t dims, std::size_t d,
                        std::size_t workers, MethodTag tag) {
  echo.emplace_back("method", pca::method_name(tag));
  echo.emplace_back("n", std::to_string(n));
  echo.emplace_back("dims", std::to_string(dims));
  echo.emplace_back("target_d", std::to_string(d));
  echo.emplace_back("workers", std::to_string(workers));
}

}  // namespace

pca::MethodTag method_tag(const MethodParams& method) {
  if (std::holds_alternative<CovEigParams>(method)) return MethodTag::CovEig;
  if (std::holds_alternative<SvdBidiagParams>(method))
    return MethodTag::SvdBidiag;
  if (std::holds_alternative<pca::SsvdParams>(method)) return MethodTag::Ssvd;
  return MethodTag::Ppca;
}

std::pair<PCAResult, CostReport> run_phased(const MethodParams& method,
                                            const linalg::Matrix& a,
                                            std::size_t workers) {
  const auto parts = partition_rows(a.rows(), workers);
  const std::size_t n = a.rows();
  const std::size_t dims = a.cols();

  MethodTrace trace;
  PCAResult result;
  PhasePlan plan;
  std::vector<std::pair<std::string, std::string>> echo;

  if (const auto* cov = std::get_if<CovEigParams>(&method)) {
    result = pca::pca_cov_eig(a, cov->target_dims, &trace);
    plan = plan_cov_eig(trace, parts, n, dims, cov->target_dims);
    append_common_echo(echo, n, dims, cov->target_dims, workers, MethodTag::CovEig);
  } else if (const auto* svd = std::get_if<SvdBidiagParams>(&method)) {
    result = pca::pca_svd_bidiag(a, svd->target_dims, &trace);
    plan = plan_svd_bidiag(trace, parts, n, dims, svd->target_dims);
    append_common_echo(echo, n, dims, svd->target_dims, workers,
                       MethodTag::SvdBidiag);
  } else if (const auto* ss = std::get_if<pca::SsvdParams>(&method)) {
    result = pca::ssvd(a, *ss, &trace);
    plan = plan_ssvd(trace, parts, n, dims, *ss);
    append_common_echo(echo, n, dims, ss->target_dims, workers, MethodTag::Ssvd);
    echo.emplace_back("oversample", std::to_string(ss->oversample));
    echo.emplace_back("power_iters", std::to_string(ss->power_iters));
    echo.emplace_back("seed", std::to_string(ss->seed));
  } else {
    const auto& pp = std::get<pca::PpcaParams>(method);
    result = pca::ppca_em(a, pp, &trace);
    plan = plan_ppca(trace, parts, n, dims, pp);
    append_common_echo(echo, n, dims, pp.target_dims, workers, MethodTag::Ppca);
    echo.emplace_back("max_iter", std::to_string(pp.max_iter));
    echo.emplace_back("tol", format_g17(pp.tol));
    echo.emplace_back("mode",
                      pp.mode == pca::PpcaMode::Standard ? "standard" : "recompute");
    echo.emplace_back("seed", std::to_string(pp.seed));
  }

  return {std::move(result), finalize_report(std::move(plan), std::move(echo),
                                             workers)};
}

}  // namespace costlab::sim
