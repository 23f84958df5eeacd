#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "costlab/errors.hpp"

namespace costlab::linalg {

/// Tally of floating-point operations, kept by the caller and passed into
/// kernels by pointer (pass nullptr to skip counting). One multiply-add
/// counts as one mul plus one add; divisions and square roots are tallied
/// together in a third bucket.
struct FlopCounter {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
  std::uint64_t divs_sqrts = 0;

  std::uint64_t total() const noexcept { return adds + muls + divs_sqrts; }
  void reset() noexcept { adds = muls = divs_sqrts = 0; }
};

/// Dense row-major matrix of doubles. All entries must be finite; the
/// data-taking constructor rejects NaN/Inf and every exported kernel checks
/// its output before returning.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Throws InvalidInputError if any entry of m is NaN or infinite.
void ensure_finite(const Matrix& m, const char* context);

/// Column means of a. Flops: rows*cols adds + cols divisions.
std::vector<double> column_means(const Matrix& a, FlopCounter* flops = nullptr);

/// a with v subtracted from every row. Flops: rows*cols adds.
Matrix subtract_row_vector(const Matrix& a, const std::vector<double>& v,
                           FlopCounter* flops = nullptr);

/// Mean-centers a: returns (a_c, mu) with a_c = a - repeat(mu) and mu the
/// exact column mean. Throws on an empty matrix.
std::pair<Matrix, std::vector<double>> mean_center(const Matrix& a,
                                                   FlopCounter* flops = nullptr);

/// Plain triple-loop product. Flops: exactly a.rows*a.cols*b.cols
/// multiply-adds. Throws on inner-dimension mismatch.
Matrix matmul(const Matrix& a, const Matrix& b, FlopCounter* flops = nullptr);

Matrix transpose(const Matrix& a);

double frobenius_norm(const Matrix& a);

/// Entrywise 1-norm: sum of |a_ij|.
double norm1_entrywise(const Matrix& a);

}  // namespace costlab::linalg
