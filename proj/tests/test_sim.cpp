#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "costlab/harness/synthetic.hpp"
#include "costlab/sim/simulator.hpp"
#include "test_util.hpp"

using namespace costlab;
using namespace costlab::sim;
using costlab::harness::gen_synthetic;
using costlab::linalg::FlopCounter;
using costlab::linalg::Matrix;
using costlab::pca::PCAResult;
using costlab::pca::PpcaMode;
using testutil::random_matrix;

namespace {

const Phase* find_phase(const CostReport& report, const std::string& name) {
  for (const Phase& ph : report.phases)
    if (ph.name == name) return &ph;
  return nullptr;
}

bool results_bit_identical(const PCAResult& a, const PCAResult& b) {
  return testutil::bits_equal(a.components, b.components) &&
         testutil::bits_equal(a.values, b.values) &&
         testutil::bits_equal(a.mean, b.mean) &&
         testutil::bits_equal(a.error_trace, b.error_trace) &&
         a.iterations_used == b.iterations_used &&
         a.converged == b.converged && a.rank_deficient == b.rank_deficient;
}

}  // namespace

TEST_CASE("partition_rows splits evenly") {
  const auto even = partition_rows(8, 2);
  REQUIRE(even.size() == 2);
  CHECK(even[0].row_begin == 0);
  CHECK(even[0].row_end == 4);
  CHECK(even[1].row_begin == 4);
  CHECK(even[1].row_end == 8);

  const auto uneven = partition_rows(7, 3);
  REQUIRE(uneven.size() == 3);
  CHECK(uneven[0].row_count() == 3);
  CHECK(uneven[1].row_count() == 2);
  CHECK(uneven[2].row_count() == 2);

  const auto singletons = partition_rows(5, 5);
  for (std::size_t w = 0; w < 5; ++w) {
    CHECK(singletons[w].row_begin == w);
    CHECK(singletons[w].row_count() == 1);
  }
}

TEST_CASE("partition_rows covers all rows disjointly") {
  for (std::size_t n : {5, 17, 64, 100}) {
    for (std::size_t p : {1, 2, 3}) {
      const auto parts = partition_rows(n, p);
      std::size_t expected_begin = 0;
      std::size_t max_count = 0, min_count = n;
      for (const auto& part : parts) {
        CHECK(part.row_begin == expected_begin);
        expected_begin = part.row_end;
        max_count = std::max(max_count, part.row_count());
        min_count = std::min(min_count, part.row_count());
      }
      CHECK(expected_begin == n);
      CHECK(max_count - min_count <= 1);
    }
  }
}

TEST_CASE("partition_rows rejects bad worker counts") {
  CHECK_THROWS_AS(partition_rows(4, 0), InvalidInputError);
  CHECK_THROWS_AS(partition_rows(4, 5), InvalidInputError);
}

TEST_CASE("coveig ledger matches the hand-counted phase formulas") {
  const Matrix a = random_matrix(8, 3, 5);
  const auto [result, report] = run_phased(CovEigParams{2}, a, 2);
  REQUIRE(report.phases.size() == 3);
  CHECK(report.phases[0].name == "column_sums");
  CHECK(report.phases[0].phase_elements() == 2u * 3u);  // P*D = 6
  CHECK(report.phases[1].name == "center_gram");
  CHECK(report.phases[1].phase_elements() == 2u * 9u);  // P*D^2 = 18
  CHECK(report.phases[2].phase_elements() == 3u * 2u);  // D*d
  CHECK(report.total_intermediate_bytes ==
        report.total_intermediate_elements * 8);
}

TEST_CASE("single-worker simulation is the degenerate case of the formulas") {
  const Matrix a = random_matrix(8, 3, 6);
  const auto [result, report] = run_phased(CovEigParams{2}, a, 1);
  CHECK(report.phases[0].phase_elements() == 3u);
  CHECK(report.phases[1].phase_elements() == 9u);
  const PCAResult direct = pca::pca_cov_eig(a, 2);
  CHECK(results_bit_identical(result, direct));
}

TEST_CASE("run_phased is bit-transparent for every method") {
  const Matrix a = gen_synthetic(29, 6, 3, 0.2, 77);
  const pca::SsvdParams ssvd_params{2, 3, 2, 5};
  const pca::PpcaParams ppca_params{2, 20, 1e-7, PpcaMode::Standard, 9};
  for (std::size_t workers : {1, 2, 4, 7}) {
    {
      const auto [res, rep] = run_phased(CovEigParams{3}, a, workers);
      CHECK(results_bit_identical(res, pca::pca_cov_eig(a, 3)));
    }
    {
      const auto [res, rep] = run_phased(SvdBidiagParams{3}, a, workers);
      CHECK(results_bit_identical(res, pca::pca_svd_bidiag(a, 3)));
    }
    {
      const auto [res, rep] = run_phased(MethodParams{ssvd_params}, a, workers);
      CHECK(results_bit_identical(res, pca::ssvd(a, ssvd_params)));
    }
    {
      const auto [res, rep] = run_phased(MethodParams{ppca_params}, a, workers);
      CHECK(results_bit_identical(res, pca::ppca_em(a, ppca_params)));
    }
  }
}

TEST_CASE("ledger totals equal the per-phase sums") {
  const Matrix a = gen_synthetic(40, 8, 3, 0.4, 13);
  const std::vector<MethodParams> methods = {
      CovEigParams{2}, SvdBidiagParams{2}, pca::SsvdParams{2, 3, 1, 3},
      pca::PpcaParams{2, 8, 1e-8, PpcaMode::Recompute, 4}};
  for (const MethodParams& method : methods) {
    const auto [res, report] = run_phased(method, a, 3);
    std::uint64_t flops = 0, elems = 0;
    for (const Phase& ph : report.phases) {
      flops += ph.phase_flops();
      elems += ph.phase_elements();
    }
    CHECK(report.total_flops == flops);
    CHECK(report.total_intermediate_elements == elems);
    CHECK(report.total_intermediate_bytes == elems * 8);

    // Recomputing the report from the same phases is idempotent.
    const CostReport again =
        finalize_report(report.phases, report.params_echo, 3);
    CHECK(again.total_flops == report.total_flops);
    CHECK(again.total_intermediate_elements ==
          report.total_intermediate_elements);
    CHECK(again.total_fanout_elements == report.total_fanout_elements);
  }
}

TEST_CASE("coveig phase-2 emission is exactly P*D^2 for growing P") {
  const Matrix a = random_matrix(24, 5, 8);
  for (std::size_t p : {1, 2, 3, 6}) {
    const auto [res, report] = run_phased(CovEigParams{2}, a, p);
    CHECK(find_phase(report, "center_gram")->phase_elements() == p * 25u);
  }
}

TEST_CASE("ppca standard ships hidden rows, recompute does not") {
  // Standard mode per-iteration traffic exceeds N*d; recompute traffic is
  // independent of N.
  const pca::PpcaParams std_params{2, 4, 1e-300, PpcaMode::Standard, 21};
  const pca::PpcaParams rec_params{2, 4, 1e-300, PpcaMode::Recompute, 21};

  const Matrix big = gen_synthetic(1000, 10, 3, 0.5, 2);
  const auto [res_std, rep_std] = run_phased(MethodParams{std_params}, big, 4);
  const Phase* std_iter = find_phase(rep_std, "em_iter_1");
  REQUIRE(std_iter != nullptr);
  CHECK(std_iter->phase_elements() > 1000u * 2u);

  const auto [res_rec, rep_rec] = run_phased(MethodParams{rec_params}, big, 4);
  const Matrix doubled = gen_synthetic(2000, 10, 3, 0.5, 2);
  const auto [res_rec2, rep_rec2] =
      run_phased(MethodParams{rec_params}, doubled, 4);
  const std::uint64_t once = find_phase(rep_rec, "em_iter_1")->phase_elements();
  const std::uint64_t twice =
      find_phase(rep_rec2, "em_iter_1")->phase_elements();
  CHECK(once == twice);
  CHECK(once == 4u * (2u * 2u + 10u * 2u) + 10u * 2u);  // P*(d^2+D*d) + D*d

  // Recompute pays for two extra hidden-state products (~2*N*D*d
  // multiply-adds each) per iteration.
  const std::uint64_t std_flops = std_iter->phase_flops();
  const std::uint64_t rec_flops =
      find_phase(rep_rec, "em_iter_1")->phase_flops();
  const std::uint64_t extra = rec_flops - std_flops;
  const std::uint64_t two_products = 2u * 2u * 1000u * 10u * 2u;
  CHECK(extra > two_products * 9 / 10);
  CHECK(extra < two_products * 13 / 10);
}

TEST_CASE("broadcast fan-out column multiplies by the worker count") {
  const Matrix a = gen_synthetic(32, 6, 2, 0.3, 3);
  const auto [res, report] = run_phased(pca::SsvdParams{2, 2, 0, 1}, a, 4);
  std::uint64_t broadcast_elems = 0;
  for (const Phase& ph : report.phases)
    for (const EmittedMatrix& e : ph.emitted)
      if (e.broadcast) broadcast_elems += e.elements;
  CHECK(broadcast_elems > 0);
  CHECK(report.total_fanout_elements ==
        report.total_intermediate_elements + 3 * broadcast_elems);
}

TEST_CASE("fit_scaling_exponent on exact power laws") {
  CHECK(fit_scaling_exponent({{10, 100}, {20, 400}, {40, 1600}}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit_scaling_exponent({{2, 8}, {4, 64}, {8, 512}}) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("fit_scaling_exponent recovers the cubic matmul flop law") {
  std::vector<std::pair<double, double>> series;
  for (std::size_t dim : {8, 16, 32, 64}) {
    FlopCounter flops;
    linalg::matmul(random_matrix(dim, dim, dim),
                   random_matrix(dim, dim, dim + 1), &flops);
    series.emplace_back(static_cast<double>(dim),
                        static_cast<double>(flops.total()));
  }
  CHECK(fit_scaling_exponent(series) == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("fit_scaling_exponent input validation") {
  CHECK_THROWS_AS(fit_scaling_exponent({{1, 1}, {2, 4}}), InvalidInputError);
  CHECK_THROWS_AS(fit_scaling_exponent({{1, 1}, {2, 4}, {3, -9}}),
                  InvalidInputError);
  CHECK_THROWS_AS(fit_scaling_exponent({{0, 1}, {2, 4}, {3, 9}}),
                  InvalidInputError);
  CHECK_THROWS_AS(fit_scaling_exponent({{2, 1}, {2, 4}, {2, 9}}),
                  InvalidInputError);
}

TEST_CASE("cost report serialization has a stable layout") {
  const Matrix a = random_matrix(12, 4, 9);
  const auto [res, report] = run_phased(CovEigParams{2}, a, 2);

  const std::string json = to_json(report);
  const std::size_t phases_at = json.find("\"phases\"");
  const std::size_t totals_at = json.find("\"totals\"");
  const std::size_t echo_at = json.find("\"params_echo\"");
  CHECK(phases_at != std::string::npos);
  CHECK(phases_at < totals_at);
  CHECK(totals_at < echo_at);
  CHECK(to_json(report) == json);  // deterministic

  const std::string csv = to_csv(report);
  CHECK(csv.rfind("phase_name,worker_flops_total,emitted_elements\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == report.phases.size() + 1);
}

TEST_CASE("errors from the underlying method propagate") {
  const Matrix a = random_matrix(4, 6, 10);
  CHECK_THROWS_AS(run_phased(SvdBidiagParams{2}, a, 2), InvalidInputError);
  CHECK_THROWS_AS(run_phased(CovEigParams{2}, a, 9), InvalidInputError);
}
