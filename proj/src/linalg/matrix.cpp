#include "costlab/linalg/matrix.hpp"

#include <cmath>
#include <string>

namespace costlab::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidInputError("Matrix: data length " +
                            std::to_string(data_.size()) + " != " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  ensure_finite(*this, "Matrix constructor");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void ensure_finite(const Matrix& m, const char* context) {
  const double* p = m.data();
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!std::isfinite(p[k])) {
      throw InvalidInputError(std::string(context) +
                              ": non-finite entry at flat index " +
                              std::to_string(k));
    }
  }
}

std::vector<double> column_means(const Matrix& a, FlopCounter* flops) {
  if (a.empty()) throw InvalidInputError("column_means: empty matrix");
  std::vector<double> mu(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) mu[j] += a(i, j);
  const double inv_n = 1.0 / static_cast<double>(a.rows());
  for (double& v : mu) v *= inv_n;
  if (flops) {
    flops->adds += static_cast<std::uint64_t>(a.rows()) * a.cols();
    flops->divs_sqrts += a.cols();
  }
  return mu;
}

Matrix subtract_row_vector(const Matrix& a, const std::vector<double>& v,
                           FlopCounter* flops) {
  if (v.size() != a.cols())
    throw InvalidInputError("subtract_row_vector: length mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - v[j];
  if (flops) flops->adds += static_cast<std::uint64_t>(a.rows()) * a.cols();
  return out;
}

std::pair<Matrix, std::vector<double>> mean_center(const Matrix& a,
                                                   FlopCounter* flops) {
  if (a.empty()) throw InvalidInputError("mean_center: empty matrix");
  std::vector<double> mu = column_means(a, flops);
  Matrix centered = subtract_row_vector(a, mu, flops);
  ensure_finite(centered, "mean_center");
  return {std::move(centered), std::move(mu)};
}

Matrix matmul(const Matrix& a, const Matrix& b, FlopCounter* flops) {
  if (a.cols() != b.rows()) {
    throw InvalidInputError("matmul: inner dimensions " +
                            std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + " differ");
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  if (flops) {
    const std::uint64_t n =
        static_cast<std::uint64_t>(a.rows()) * a.cols() * b.cols();
    flops->adds += n;
    flops->muls += n;
  }
  ensure_finite(out, "matmul");
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

double frobenius_norm(const Matrix& a) {
  double acc = 0.0;
  const double* p = a.data();
  for (std::size_t k = 0; k < a.size(); ++k) acc += p[k] * p[k];
  return std::sqrt(acc);
}

double norm1_entrywise(const Matrix& a) {
  double acc = 0.0;
  const double* p = a.data();
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::fabs(p[k]);
  return acc;
}

}  // namespace costlab::linalg
