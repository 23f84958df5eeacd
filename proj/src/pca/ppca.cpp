#include <cmath>

#include "costlab/linalg/jacobi.hpp"
#include "costlab/linalg/qr.hpp"
#include "costlab/linalg/rng.hpp"
#include "costlab/pca/methods.hpp"
#include "internal.hpp"

namespace costlab::pca {

namespace {

// Gauss-Jordan inverse with partial pivoting for the small d x d systems of
// the EM updates. Throws DegeneracyError on a singular matrix.
Matrix invert_small(const Matrix& m, FlopCounter* flops) {
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1.0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(aug(i, k)) > std::fabs(aug(pivot, k))) pivot = i;
    if (aug(pivot, k) == 0.0)
      throw DegeneracyError("ppca_em: singular matrix in EM update");
    if (pivot != k)
      for (std::size_t j = 0; j < 2 * n; ++j)
        std::swap(aug(k, j), aug(pivot, j));
    const double inv_p = 1.0 / aug(k, k);
    for (std::size_t j = 0; j < 2 * n; ++j) aug(k, j) *= inv_p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || aug(i, k) == 0.0) continue;
      const double f = aug(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(k, j);
    }
  }
  if (flops) {
    const std::uint64_t n3 = static_cast<std::uint64_t>(n) * n * n;
    flops->muls += 4 * n3;
    flops->adds += 2 * n3;
    flops->divs_sqrts += n;
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

double dot_all(const Matrix& a, const Matrix& b, FlopCounter* flops) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a.data()[k] * b.data()[k];
  if (flops) {
    flops->muls += a.size();
    flops->adds += a.size();
  }
  return acc;
}

}  // namespace

double reconstruction_error_1norm(const Matrix& y_centered, const Matrix& x,
                                  const Matrix& c) {
  if (x.rows() != y_centered.rows() || c.rows() != y_centered.cols() ||
      c.cols() != x.cols()) {
    throw InvalidInputError("reconstruction_error_1norm: shape mismatch");
  }
  const Matrix approx = linalg::matmul(x, linalg::transpose(c));
  double acc = 0.0;
  for (std::size_t k = 0; k < y_centered.size(); ++k)
    acc += std::fabs(y_centered.data()[k] - approx.data()[k]);
  return acc;
}

PCAResult ppca_em(const Matrix& a, const PpcaParams& params,
                  MethodTrace* trace) {
  if (a.empty()) throw InvalidInputError("ppca_em: empty matrix");
  const std::size_t n = a.rows();
  const std::size_t dims = a.cols();
  const std::size_t d = params.target_dims;
  if (d < 1 || d >= dims)
    throw InvalidInputError("ppca_em: need 1 <= target_dims < cols");
  if (n <= d) throw InvalidInputError("ppca_em: need rows > target_dims");
  if (params.max_iter < 1) throw InvalidInputError("ppca_em: max_iter < 1");
  if (!(params.tol > 0.0)) throw InvalidInputError("ppca_em: tol must be > 0");

  FlopCounter c_center;
  auto [y, mu] = linalg::mean_center(a, &c_center);

  linalg::GaussianSampler sampler(params.seed);
  Matrix c = sampler.sample_matrix(dims, d);
  double sigma2 = 1.0;

  // Once the error reaches machine-precision scale the relative-change test
  // is meaningless; treat that as converged.
  const double error_floor = 1e-12 * std::max(1.0, linalg::norm1_entrywise(y));

  PCAResult out;
  out.method = MethodTag::Ppca;
  out.mean = std::move(mu);
  out.converged = false;

  double prev_err = 0.0;
  for (std::size_t iter = 1; iter <= params.max_iter; ++iter) {
    FlopCounter fc;

    // E-step. Hidden states X = Y * C * (C'C + sigma2 I)^-1.
    Matrix m = linalg::matmul(linalg::transpose(c), c, &fc);
    for (std::size_t i = 0; i < d; ++i) m(i, i) += sigma2;
    fc.adds += d;
    const Matrix m_inv = invert_small(m, &fc);
    const Matrix x = linalg::matmul(y, linalg::matmul(c, m_inv, &fc), &fc);
    const std::uint64_t latent_flops = fc.total();

    // Expected second moments and cross statistics.
    Matrix sx = linalg::matmul(linalg::transpose(x), x, &fc);
    const double n_sigma2 = static_cast<double>(n) * sigma2;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) sx(i, j) += n_sigma2 * m_inv(i, j);
    fc.muls += static_cast<std::uint64_t>(d) * d;
    fc.adds += static_cast<std::uint64_t>(d) * d;
    const Matrix syx = linalg::matmul(linalg::transpose(y), x, &fc);

    // M-step.
    const Matrix c_new = linalg::matmul(syx, invert_small(sx, &fc), &fc);

    // Reconstruction residual drives both the stopping rule and the noise
    // update; sigma2 is evaluated in the cancellation-free residual form
    // ||Y - X C'||_F^2 + N sigma2 tr(M^-1 C'C), which is algebraically the
    // standard update but stays non-negative near convergence.
    const Matrix approx = linalg::matmul(x, linalg::transpose(c_new), &fc);
    double err1 = 0.0;
    double err_fro2 = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double r = y.data()[k] - approx.data()[k];
      err1 += std::fabs(r);
      err_fro2 += r * r;
    }
    fc.adds += 3 * y.size();
    fc.muls += y.size();
    const Matrix gram_new = linalg::matmul(linalg::transpose(c_new), c_new, &fc);
    const double trace_term = dot_all(m_inv, gram_new, &fc);
    const double sigma2_new =
        (err_fro2 + n_sigma2 * trace_term) / (static_cast<double>(n) * dims);
    fc.muls += 2;
    fc.adds += 1;
    fc.divs_sqrts += 1;

    c = c_new;
    out.error_trace.push_back(err1);
    out.iterations_used = iter;
    if (trace) trace->iterations.push_back({fc.total(), latent_flops});

    if (err1 <= error_floor) {
      out.converged = true;
      break;
    }
    if (iter >= 2 && std::fabs(err1 - prev_err) < params.tol * prev_err) {
      out.converged = true;
      break;
    }
    if (sigma2_new < 1e-300)
      throw DegeneracyError("ppca_em: noise variance collapsed below 1e-300");
    sigma2 = sigma2_new;
    prev_err = err1;
  }

  // EM fixes the principal subspace, not an ordered orthonormal basis:
  // orthonormalize C and order by the eigenvalues of the projected Gram.
  FlopCounter c_fin;
  const Matrix basis = linalg::qr_decompose(c, &c_fin).q;
  const Matrix projected = linalg::matmul(y, basis, &c_fin);
  const Matrix small = linalg::matmul(linalg::transpose(projected), projected, &c_fin);
  const linalg::EigenPairs eig = linalg::sym_eig(small, 1e-12, 100, &c_fin);
  out.components = linalg::matmul(basis, eig.vectors, &c_fin);
  out.values = eig.values;
  internal::clamp_non_negative(out.values);
  internal::sign_fix_columns(out.components);

  if (trace) {
    trace->stages = {{"center", c_center.total()}, {"finalize", c_fin.total()}};
  }
  return out;
}

}  // namespace costlab::pca
