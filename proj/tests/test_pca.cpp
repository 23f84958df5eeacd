#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "costlab/harness/synthetic.hpp"
#include "costlab/pca/methods.hpp"
#include "costlab/pca/subspace.hpp"
#include "test_util.hpp"

using namespace costlab;
using namespace costlab::pca;
using costlab::harness::gen_synthetic;
using costlab::linalg::GaussianSampler;
using costlab::linalg::Matrix;
using testutil::random_matrix;

namespace {

Matrix line_data() {
  // Points (t, t) for t = -2..2: all variance lies along (1,1)/sqrt(2).
  Matrix a(5, 2);
  for (int t = -2; t <= 2; ++t) {
    a(static_cast<std::size_t>(t + 2), 0) = t;
    a(static_cast<std::size_t>(t + 2), 1) = t;
  }
  return a;
}

// Brute-force covariance of a 2-column matrix plus the characteristic
// polynomial, used as the oracle for the line-data cases.
std::pair<double, double> eig2_oracle(const Matrix& a) {
  std::vector<double> mu(2, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < 2; ++j) mu[j] += a(i, j) / a.rows();
  double cxx = 0, cxy = 0, cyy = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double x = a(i, 0) - mu[0];
    const double y = a(i, 1) - mu[1];
    cxx += x * x;
    cxy += x * y;
    cyy += y * y;
  }
  const double tr = cxx + cyy;
  const double det = cxx * cyy - cxy * cxy;
  const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
  return {tr / 2.0 + disc, tr / 2.0 - disc};
}

double max_entry_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace

TEST_CASE("pca_cov_eig recovers the diagonal direction of line data") {
  const Matrix a = line_data();
  const PCAResult res = pca_cov_eig(a, 2);
  const auto [l1, l2] = eig2_oracle(a);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(res.values[0] == doctest::Approx(l1).epsilon(1e-12));
  CHECK(res.values[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(l2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.components(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(res.components(1, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(res.mean == std::vector<double>{0.0, 0.0});
}

TEST_CASE("pca_cov_eig with one nonzero column picks that axis") {
  Matrix a(6, 3, 0.0);
  for (std::size_t i = 0; i < 6; ++i) a(i, 1) = static_cast<double>(i);
  const PCAResult res = pca_cov_eig(a, 1);
  CHECK(res.components(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.components(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.components(2, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.values[0] > 0.0);
}

TEST_CASE("pca_cov_eig components diagonalize the covariance") {
  const Matrix a = random_matrix(20, 5, 21);
  const PCAResult res = pca_cov_eig(a, 5);
  const auto [centered, mu] = linalg::mean_center(a);
  const Matrix gram = linalg::matmul(linalg::transpose(centered), centered);
  const Matrix projected = linalg::matmul(
      linalg::transpose(res.components), linalg::matmul(gram, res.components));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) CHECK(std::fabs(projected(i, j)) < 1e-7 * res.values[0]);
}

TEST_CASE("pca_cov_eig rejects out-of-range target_dims") {
  const Matrix a = random_matrix(4, 3, 2);
  CHECK_THROWS_AS(pca_cov_eig(a, 0), InvalidInputError);
  CHECK_THROWS_AS(pca_cov_eig(a, 4), InvalidInputError);
}

TEST_CASE("pca_svd_bidiag on a matrix that is centered and diagonal") {
  // Columns already sum to zero, so the centered matrix equals the input
  // and its squared singular values are 18 and 8.
  Matrix a(4, 2, 0.0);
  a(0, 0) = 3.0;
  a(1, 0) = -3.0;
  a(2, 1) = 2.0;
  a(3, 1) = -2.0;
  const PCAResult res = pca_svd_bidiag(a, 2);
  CHECK(res.values[0] == doctest::Approx(18.0).epsilon(1e-12));
  CHECK(res.values[1] == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(res.components(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.components(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.components(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.components(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pca_svd_bidiag agrees with pca_cov_eig on line data") {
  const Matrix a = line_data();
  const PCAResult svd = pca_svd_bidiag(a, 1);
  const PCAResult cov = pca_cov_eig(a, 1);
  CHECK(max_entry_diff(svd.components, cov.components) < 1e-9);
  CHECK(svd.values[0] == doctest::Approx(cov.values[0]).epsilon(1e-9));
}

TEST_CASE("pca_svd_bidiag agrees with pca_cov_eig on random data") {
  const Matrix a = random_matrix(30, 6, 33);
  const PCAResult svd = pca_svd_bidiag(a, 6);
  const PCAResult cov = pca_cov_eig(a, 6);
  CHECK(max_entry_diff(svd.components, cov.components) < 1e-6);
  for (std::size_t k = 0; k < 6; ++k)
    CHECK(svd.values[k] == doctest::Approx(cov.values[k]).epsilon(1e-6));
}

TEST_CASE("pca_svd_bidiag rejects wide input") {
  CHECK_THROWS_AS(pca_svd_bidiag(random_matrix(3, 5, 1), 2), InvalidInputError);
}

TEST_CASE("ssvd recovers the right vector of a rank-1 matrix") {
  GaussianSampler sampler(404);
  Matrix u(20, 1);
  for (std::size_t i = 0; i < 20; ++i) u(i, 0) = sampler.next();
  Matrix v(5, 1);
  double vnorm = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    v(i, 0) = sampler.next();
    vnorm += v(i, 0) * v(i, 0);
  }
  vnorm = std::sqrt(vnorm);
  for (std::size_t i = 0; i < 5; ++i) v(i, 0) /= vnorm;
  const Matrix a = linalg::matmul(u, linalg::transpose(v));

  const PCAResult res = ssvd(a, {1, 2, 1, 7});
  const PCAResult exact = pca_svd_bidiag(a, 1);
  CHECK(max_entry_diff(res.components, exact.components) < 1e-8);
  CHECK(res.values[0] == doctest::Approx(exact.values[0]).epsilon(1e-10));
  // Same direction as v up to the fixed sign convention.
  CHECK(std::fabs(std::fabs(res.components(0, 0)) - std::fabs(v(0, 0))) < 1e-8);
}

TEST_CASE("ssvd flags rank deficiency on constant data") {
  const Matrix a(6, 4, 1.0);  // centered matrix is exactly zero
  const PCAResult res = ssvd(a, {2, 1, 1, 9});
  CHECK(res.rank_deficient);
  CHECK(res.values == std::vector<double>{0.0, 0.0});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(res.components(i, j) == 0.0);
}

TEST_CASE("ssvd captures the top subspace of nearly rank-3 data") {
  const Matrix a = gen_synthetic(30, 8, 3, 1e-8, 5);
  const PCAResult res = ssvd(a, {3, 5, 2, 1});
  const PCAResult oracle = pca_cov_eig(a, 3);
  CHECK(largest_principal_angle(res.components, oracle.components) < 1e-6);
}

TEST_CASE("ssvd rejects an oversampled width") {
  CHECK_THROWS_AS(ssvd(random_matrix(10, 4, 3), {3, 5, 1, 0}),
                  InvalidInputError);
}

TEST_CASE("ssvd is bit-reproducible for a fixed seed") {
  const Matrix a = random_matrix(15, 6, 50);
  const PCAResult r1 = ssvd(a, {2, 3, 2, 123});
  const PCAResult r2 = ssvd(a, {2, 3, 2, 123});
  CHECK(testutil::bits_equal(r1.components, r2.components));
  CHECK(testutil::bits_equal(r1.values, r2.values));
}

TEST_CASE("ppca_em finds the subspace of noiseless rank-2 data") {
  const Matrix a = gen_synthetic(40, 6, 2, 0.0, 11);
  const PCAResult res = ppca_em(a, {2, 200, 1e-8, PpcaMode::Standard, 3});
  const PCAResult oracle = pca_cov_eig(a, 2);
  CHECK(res.converged);
  CHECK(largest_principal_angle(res.components, oracle.components) < 1e-3);
}

TEST_CASE("ppca_em error trace is monotone on noise-only data") {
  const Matrix a = gen_synthetic(30, 5, 5, 1.0, 17);
  const PCAResult res = ppca_em(a, {1, 60, 1e-7, PpcaMode::Standard, 29});
  REQUIRE(!res.error_trace.empty());
  const double slack = 1e-9 * std::max(1.0, res.error_trace.front());
  for (std::size_t t = 1; t < res.error_trace.size(); ++t)
    CHECK(res.error_trace[t] <= res.error_trace[t - 1] + slack);
}

TEST_CASE("ppca_em spans an axis-aligned subspace exactly") {
  Matrix a(12, 5, 0.0);
  GaussianSampler sampler(83);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 2; ++j) a(i, j) = sampler.next();
  const PCAResult res = ppca_em(a, {2, 300, 1e-10, PpcaMode::Standard, 7});
  Matrix axes(5, 2, 0.0);
  axes(0, 0) = 1.0;
  axes(1, 1) = 1.0;
  CHECK(largest_principal_angle(res.components, axes) < 1e-6);
}

TEST_CASE("ppca_em modes produce bit-identical results") {
  const Matrix a = gen_synthetic(25, 6, 3, 0.05, 31);
  const PCAResult std_run = ppca_em(a, {3, 40, 1e-7, PpcaMode::Standard, 99});
  const PCAResult rec_run = ppca_em(a, {3, 40, 1e-7, PpcaMode::Recompute, 99});
  CHECK(testutil::bits_equal(std_run.components, rec_run.components));
  CHECK(testutil::bits_equal(std_run.values, rec_run.values));
  CHECK(testutil::bits_equal(std_run.error_trace, rec_run.error_trace));
  CHECK(std_run.iterations_used == rec_run.iterations_used);
}

TEST_CASE("ppca_em is bit-reproducible for a fixed seed") {
  const Matrix a = gen_synthetic(20, 5, 2, 0.1, 41);
  const PCAResult r1 = ppca_em(a, {2, 30, 1e-6, PpcaMode::Standard, 5});
  const PCAResult r2 = ppca_em(a, {2, 30, 1e-6, PpcaMode::Standard, 5});
  CHECK(testutil::bits_equal(r1.components, r2.components));
  CHECK(r1.iterations_used == r2.iterations_used);
}

TEST_CASE("ppca_em validates parameters") {
  const Matrix a = random_matrix(10, 4, 1);
  CHECK_THROWS_AS(ppca_em(a, {0, 10, 1e-6, PpcaMode::Standard, 0}),
                  InvalidInputError);
  CHECK_THROWS_AS(ppca_em(a, {4, 10, 1e-6, PpcaMode::Standard, 0}),
                  InvalidInputError);
  CHECK_THROWS_AS(ppca_em(a, {2, 0, 1e-6, PpcaMode::Standard, 0}),
                  InvalidInputError);
  CHECK_THROWS_AS(ppca_em(a, {2, 10, 0.0, PpcaMode::Standard, 0}),
                  InvalidInputError);
}

TEST_CASE("reconstruction_error_1norm") {
  SUBCASE("exact reconstruction gives zero") {
    // Orthonormal C and data already in span(C), so X = Y*C reconstructs.
    Matrix c(3, 2, 0.0);
    c(0, 0) = 1.0;
    c(2, 1) = 1.0;
    Matrix y(4, 3, 0.0);
    GaussianSampler sampler(2);
    for (std::size_t i = 0; i < 4; ++i) {
      y(i, 0) = sampler.next();
      y(i, 2) = sampler.next();
    }
    const Matrix x = linalg::matmul(y, c);
    CHECK(reconstruction_error_1norm(y, x, c) <= 1e-9);
  }
  SUBCASE("zero C gives the entrywise norm of Y") {
    const Matrix y = random_matrix(5, 3, 6);
    const Matrix x(5, 2, 0.3);
    const Matrix c(3, 2, 0.0);
    CHECK(reconstruction_error_1norm(y, x, c) ==
          doctest::Approx(linalg::norm1_entrywise(y)).epsilon(1e-15));
  }
  SUBCASE("matches a direct summation oracle") {
    const Matrix y = random_matrix(4, 3, 7);
    const Matrix x = random_matrix(4, 2, 8);
    const Matrix c = random_matrix(3, 2, 9);
    double expected = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double approx = 0.0;
        for (std::size_t k = 0; k < 2; ++k) approx += x(i, k) * c(j, k);
        expected += std::fabs(y(i, j) - approx);
      }
    CHECK(reconstruction_error_1norm(y, x, c) ==
          doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("rejects mismatched shapes") {
    CHECK_THROWS_AS(
        reconstruction_error_1norm(Matrix(4, 3), Matrix(4, 2), Matrix(2, 2)),
        InvalidInputError);
  }
}

TEST_CASE("every method returns descending non-negative unit components") {
  const Matrix a = gen_synthetic(24, 6, 6, 0.5, 59);
  const std::vector<PCAResult> results = {
      pca_cov_eig(a, 4), pca_svd_bidiag(a, 4), ssvd(a, {4, 2, 2, 1}),
      ppca_em(a, {4, 50, 1e-7, PpcaMode::Standard, 2})};
  for (const PCAResult& res : results) {
    for (std::size_t k = 0; k < res.values.size(); ++k) {
      CHECK(res.values[k] >= 0.0);
      if (k) CHECK(res.values[k] <= res.values[k - 1]);
      double norm = 0.0;
      for (std::size_t i = 0; i < res.components.rows(); ++i)
        norm += res.components(i, k) * res.components(i, k);
      CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}
