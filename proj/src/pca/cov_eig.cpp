#include "costlab/linalg/jacobi.hpp"
#include "costlab/pca/methods.hpp"
#include "internal.hpp"

namespace costlab::pca {

using linalg::EigenPairs;
using linalg::sym_eig;

PCAResult pca_cov_eig(const Matrix& a, std::size_t target_dims,
                      MethodTrace* trace) {
  if (a.empty()) throw InvalidInputError("pca_cov_eig: empty matrix");
  const std::size_t n = a.rows();
  const std::size_t dims = a.cols();
  if (target_dims < 1 || target_dims > std::min(n, dims)) {
    throw InvalidInputError("pca_cov_eig: target_dims out of range [1, " +
                            std::to_string(std::min(n, dims)) + "]");
  }

  FlopCounter c_sums, c_center, c_gram, c_eig;
  const std::vector<double> mu = linalg::column_means(a, &c_sums);
  const Matrix centered = linalg::subtract_row_vector(a, mu, &c_center);
  const Matrix gram = linalg::matmul(linalg::transpose(centered), centered, &c_gram);
  const EigenPairs eig = sym_eig(gram, 1e-12, 100, &c_eig);

  PCAResult out;
  out.method = MethodTag::CovEig;
  out.mean = mu;
  out.values.assign(eig.values.begin(), eig.values.begin() + target_dims);
  internal::clamp_non_negative(out.values);
  out.components = Matrix(dims, target_dims);
  for (std::size_t i = 0; i < dims; ++i)
    for (std::size_t j = 0; j < target_dims; ++j)
      out.components(i, j) = eig.vectors(i, j);
  internal::sign_fix_columns(out.components);

  if (trace) {
    trace->stages = {{"column_sums", c_sums.total()},
                     {"center", c_center.total()},
                     {"gram", c_gram.total()},
                     {"eig", c_eig.total()}};
  }
  return out;
}

}  // namespace costlab::pca
