#include <cmath>

#include "costlab/linalg/jacobi.hpp"
#include "costlab/linalg/qr.hpp"
#include "costlab/linalg/rng.hpp"
#include "costlab/pca/methods.hpp"
#include "internal.hpp"

namespace costlab::pca {

PCAResult ssvd(const Matrix& a, const SsvdParams& params, MethodTrace* trace) {
  if (a.empty()) throw InvalidInputError("ssvd: empty matrix");
  const std::size_t n = a.rows();
  const std::size_t dims = a.cols();
  const std::size_t d = params.target_dims;
  const std::size_t l = d + params.oversample;
  if (d < 1) throw InvalidInputError("ssvd: target_dims must be >= 1");
  if (l > std::min(n, dims)) {
    throw InvalidInputError("ssvd: target_dims + oversample = " +
                            std::to_string(l) + " exceeds min(N, D) = " +
                            std::to_string(std::min(n, dims)));
  }

  FlopCounter c_center, c_sample, c_power, c_qr, c_project, c_eig;
  auto [centered, mu] = linalg::mean_center(a, &c_center);

  linalg::GaussianSampler sampler(params.seed);
  const Matrix omega = sampler.sample_matrix(dims, l);
  Matrix z = linalg::matmul(centered, omega, &c_sample);

  const Matrix centered_t = linalg::transpose(centered);
  for (std::size_t t = 0; t < params.power_iters; ++t) {
    z = linalg::matmul(centered, linalg::matmul(centered_t, z, &c_power), &c_power);
    z = linalg::qr_decompose(z, &c_power).q;  // keep the sharpened range only
  }

  const Matrix q = linalg::qr_decompose(z, &c_qr).q;
  const Matrix b = linalg::matmul(linalg::transpose(q), centered, &c_project);

  // Small l x l eigenproblem on B*B'; right vectors recovered as B'*u/sigma.
  const Matrix small = linalg::matmul(b, linalg::transpose(b), &c_eig);
  const linalg::EigenPairs eig = linalg::sym_eig(small, 1e-12, 100, &c_eig);

  PCAResult out;
  out.method = MethodTag::Ssvd;
  out.mean = std::move(mu);
  out.iterations_used = params.power_iters;
  out.values.assign(eig.values.begin(), eig.values.begin() + d);
  internal::clamp_non_negative(out.values);

  const double sigma_top = std::sqrt(std::max(eig.values[0], 0.0));
  out.components = Matrix(dims, d, 0.0);
  const Matrix bt = linalg::transpose(b);
  for (std::size_t k = 0; k < d; ++k) {
    const double sigma_k = std::sqrt(std::max(eig.values[k], 0.0));
    if (sigma_k <= 1e-12 * sigma_top) {
      out.rank_deficient = true;
      continue;  // zero-padded column
    }
    for (std::size_t i = 0; i < dims; ++i) {
      double acc = 0.0;
      for (std::size_t r = 0; r < l; ++r) acc += bt(i, r) * eig.vectors(r, k);
      out.components(i, k) = acc / sigma_k;
    }
    c_eig.muls += static_cast<std::uint64_t>(dims) * l;
    c_eig.adds += static_cast<std::uint64_t>(dims) * l;
    c_eig.divs_sqrts += dims + 1;
  }
  linalg::ensure_finite(out.components, "ssvd (components)");
  internal::sign_fix_columns(out.components);

  if (trace) {
    trace->stages = {{"center", c_center.total()}, {"sample", c_sample.total()},
                     {"power", c_power.total()},   {"qr", c_qr.total()},
                     {"project", c_project.total()}, {"small_eig", c_eig.total()}};
  }
  return out;
}

}  // namespace costlab::pca
