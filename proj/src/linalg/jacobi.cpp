#include "costlab/linalg/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace costlab::linalg {

namespace {

double off_diagonal_norm(const Matrix& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j) acc += s(i, j) * s(i, j);
  return std::sqrt(acc);
}

double asymmetry(const Matrix& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j) {
      const double d = s(i, j) - s(j, i);
      acc += d * d;
    }
  return std::sqrt(2.0 * acc);
}

}  // namespace

EigenPairs sym_eig(const Matrix& s, double tol, std::size_t max_sweeps,
                   FlopCounter* flops) {
  if (s.rows() != s.cols())
    throw InvalidInputError("sym_eig: matrix must be square");
  if (s.empty()) throw InvalidInputError("sym_eig: empty matrix");
  const std::size_t n = s.rows();
  const double norm = frobenius_norm(s);
  if (asymmetry(s) > 1e-9 * norm)
    throw InvalidInputError("sym_eig: matrix is not symmetric");

  Matrix a = s;
  // Symmetrize exactly so the rotation updates stay consistent.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  Matrix vec = Matrix::identity(n);

  std::size_t sweep = 0;
  while (off_diagonal_norm(a) > tol * norm) {
    if (flops) {
      flops->muls += static_cast<std::uint64_t>(n) * n;
      flops->adds += static_cast<std::uint64_t>(n) * n;
    }
    if (sweep >= max_sweeps) {
      throw ConvergenceError("sym_eig: no convergence after " +
                                 std::to_string(max_sweeps) + " sweeps",
                             off_diagonal_norm(a));
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);
        const double app = a(p, p);
        const double aqq = a(q, q);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = arp - sn * (arq + tau * arp);
            a(p, r) = a(r, p);
            a(r, q) = arq + sn * (arp - tau * arq);
            a(q, r) = a(r, q);
          }
          const double vrp = vec(r, p);
          const double vrq = vec(r, q);
          vec(r, p) = vrp - sn * (vrq + tau * vrp);
          vec(r, q) = vrq + sn * (vrp - tau * vrq);
        }
        if (flops) {
          flops->muls += 8 * static_cast<std::uint64_t>(n) + 8;
          flops->adds += 6 * static_cast<std::uint64_t>(n) + 6;
          flops->divs_sqrts += 5;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x) > a(y, y);
  });

  EigenPairs out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = vec(r, order[k]);
  }
  ensure_finite(out.vectors, "sym_eig (vectors)");
  return out;
}

}  // namespace costlab::linalg
