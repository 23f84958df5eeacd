#include "costlab/linalg/bidiag.hpp"
#include "costlab/linalg/bidiag_svd.hpp"
#include "costlab/linalg/qr.hpp"
#include "costlab/pca/methods.hpp"
#include "internal.hpp"

namespace costlab::pca {

PCAResult pca_svd_bidiag(const Matrix& a, std::size_t target_dims,
                         MethodTrace* trace) {
  if (a.empty()) throw InvalidInputError("pca_svd_bidiag: empty matrix");
  const std::size_t n = a.rows();
  const std::size_t dims = a.cols();
  if (n < dims) {
    throw InvalidInputError(
        "pca_svd_bidiag: requires rows >= cols (got " + std::to_string(n) +
        "x" + std::to_string(dims) + "); transpose is the caller's call");
  }
  if (target_dims < 1 || target_dims > dims)
    throw InvalidInputError("pca_svd_bidiag: target_dims out of range");

  FlopCounter c_center, c_qr, c_bidiag, c_svd, c_assemble;
  auto [centered, mu] = linalg::mean_center(a, &c_center);
  auto [q, r] = linalg::qr_decompose(centered, &c_qr);
  auto [u1, b, v1] = linalg::bidiagonalize(r, &c_bidiag);
  linalg::SvdResult svd = linalg::bidiag_svd(b, 1e-12, 100, &c_svd);

  // centered = Q*U1*U2 * diag(sigma) * (V2'*V1); rows of V2'*V1 are the
  // right singular vectors.
  const Matrix v_rows = linalg::matmul(linalg::transpose(svd.v), v1, &c_assemble);

  PCAResult out;
  out.method = MethodTag::SvdBidiag;
  out.mean = std::move(mu);
  out.values.resize(target_dims);
  out.components = Matrix(dims, target_dims);
  for (std::size_t k = 0; k < target_dims; ++k) {
    out.values[k] = svd.sigma[k] * svd.sigma[k];
    for (std::size_t i = 0; i < dims; ++i) out.components(i, k) = v_rows(k, i);
  }
  internal::sign_fix_columns(out.components);

  if (trace) {
    trace->stages = {{"center", c_center.total()},
                     {"qr", c_qr.total()},
                     {"bidiag", c_bidiag.total()},
                     {"bidiag_svd", c_svd.total()},
                     {"assemble", c_assemble.total()}};
  }
  return out;
}

}  // namespace costlab::pca
