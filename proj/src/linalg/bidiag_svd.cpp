#include "costlab/linalg/bidiag_svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "costlab/linalg/bidiag.hpp"
#include "costlab/linalg/givens.hpp"

namespace costlab::linalg {

namespace {

// Wilkinson shift: eigenvalue of the trailing 2x2 block of B'B closest to
// its bottom-right entry. Guards against the a == b degenerate split.
double trailing_shift(const Matrix& w, std::size_t a, std::size_t b,
                      FlopCounter* flops) {
  const double dm = w(b - 1, b - 1);
  const double db = w(b, b);
  const double fm = (b >= a + 2) ? w(b - 2, b - 1) : 0.0;
  const double fb = w(b - 1, b);
  const double ta = dm * dm + fm * fm;
  const double tb = db * db + fb * fb;
  const double tab = dm * fb;
  const double dt = 0.5 * (ta - tb);
  if (flops) {
    flops->muls += 6;
    flops->adds += 3;
  }
  if (tab == 0.0) return tb;
  double mu;
  if (dt >= 0.0) {
    mu = tb - (tab * tab) / (dt + std::hypot(dt, tab));
  } else {
    mu = tb + (tab * tab) / (-dt + std::hypot(dt, tab));
  }
  if (flops) {
    flops->muls += 3;
    flops->adds += 2;
    flops->divs_sqrts += 2;
  }
  return mu;
}

// d(i) == 0 with i < b: left rotations push the superdiagonal entry of row i
// off the end of the block, leaving row i identically zero.
void chase_intermediate_zero(Matrix& w, Matrix& u_acc, std::size_t i,
                             std::size_t b, FlopCounter* flops) {
  for (std::size_t k = i + 1; k <= b; ++k) {
    if (w(i, k) == 0.0) break;
    const auto [c, s, r] = givens(w(k, k), w(i, k), flops);
    rotate_rows(w, k, i, c, s, flops);
    w(k, k) = r;
    w(i, k) = 0.0;
    rotate_cols(u_acc, k, i, c, s, flops);
  }
}

// d(b) == 0: right rotations absorb the trailing superdiagonal entry,
// leaving column b identically zero.
void chase_trailing_zero(Matrix& w, Matrix& v_acc, std::size_t a,
                         std::size_t b, FlopCounter* flops) {
  for (std::size_t k = b; k-- > a;) {
    if (w(k, b) == 0.0) break;
    const auto [c, s, r] = givens(w(k, k), w(k, b), flops);
    rotate_cols(w, k, b, c, s, flops);
    w(k, k) = r;
    w(k, b) = 0.0;
    rotate_cols(v_acc, k, b, c, s, flops);
  }
}

// One implicit-shift QR step on the block [a, b].
void golub_kahan_step(Matrix& w, Matrix& u_acc, Matrix& v_acc, std::size_t a,
                      std::size_t b, FlopCounter* flops) {
  const double mu = trailing_shift(w, a, b, flops);
  double y = w(a, a) * w(a, a) - mu;
  double z = w(a, a) * w(a, a + 1);
  if (flops) {
    flops->muls += 2;
    flops->adds += 1;
  }

  for (std::size_t k = a; k < b; ++k) {
    {
      const auto [c, s, r] = givens(y, z, flops);
      rotate_cols(w, k, k + 1, c, s, flops);
      rotate_cols(v_acc, k, k + 1, c, s, flops);
      if (k > a) w(k - 1, k + 1) = 0.0;  // this rotation zeroed the bulge
    }
    {
      const auto [c, s, r] = givens(w(k, k), w(k + 1, k), flops);
      rotate_rows(w, k, k + 1, c, s, flops);
      w(k, k) = r;
      w(k + 1, k) = 0.0;
      rotate_cols(u_acc, k, k + 1, c, s, flops);
    }
    if (k + 1 < b) {
      y = w(k, k + 1);
      z = w(k, k + 2);
    }
  }
}

double superdiag_norm(const Matrix& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < w.rows(); ++i) acc += w(i, i + 1) * w(i, i + 1);
  return std::sqrt(acc);
}

}  // namespace

SvdResult bidiag_svd(const Matrix& b, double tol, std::size_t max_sweeps,
                     FlopCounter* flops) {
  if (b.rows() != b.cols())
    throw InvalidInputError("bidiag_svd: matrix must be square");
  if (b.empty()) throw InvalidInputError("bidiag_svd: empty matrix");
  const std::size_t n = b.rows();
  if (!is_upper_bidiagonal(b, 1e-12 * (1.0 + frobenius_norm(b))))
    throw InvalidInputError("bidiag_svd: input is not upper bidiagonal");

  // Work on the band only; anything off the band is treated as exact zero.
  Matrix w(n, n, 0.0);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w(i, i) = b(i, i);
    max_abs = std::max(max_abs, std::fabs(w(i, i)));
    if (i + 1 < n) {
      w(i, i + 1) = b(i, i + 1);
      max_abs = std::max(max_abs, std::fabs(w(i, i + 1)));
    }
  }

  // The shift computation squares band entries; rescale extreme inputs by a
  // power of two (exact for well-scaled data) to keep those squares finite.
  double scale = 1.0;
  if (max_abs > 0x1p+500 || (max_abs > 0.0 && max_abs < 0x1p-500)) {
    int exponent = 0;
    std::frexp(max_abs, &exponent);
    scale = std::ldexp(1.0, exponent);
    for (std::size_t i = 0; i < n; ++i) {
      w(i, i) /= scale;
      if (i + 1 < n) w(i, i + 1) /= scale;
    }
    if (flops) flops->divs_sqrts += 2 * n - 1;
  }

  Matrix u_acc = Matrix::identity(n);
  Matrix v_acc = Matrix::identity(n);

  const std::size_t step_budget = max_sweeps * n;
  std::size_t steps = 0;

  while (true) {
    // Chop converged superdiagonal entries, and diagonal entries that are
    // negligible against the band (they would stall the shifted step once
    // their products underflow; the deflation chases handle exact zeros).
    double band_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      band_max = std::max(band_max, std::fabs(w(i, i)));
      if (i + 1 < n) band_max = std::max(band_max, std::fabs(w(i, i + 1)));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double thresh = tol * (std::fabs(w(i, i)) + std::fabs(w(i + 1, i + 1)));
      if (std::fabs(w(i, i + 1)) <= thresh) w(i, i + 1) = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (w(i, i) != 0.0 && std::fabs(w(i, i)) <= tol * band_max) w(i, i) = 0.0;
    if (flops) flops->adds += n > 0 ? n - 1 : 0;

    // Trailing unreduced block [a, b].
    std::size_t b_idx = 0;
    bool found = false;
    for (std::size_t i = n - 1; i-- > 0;) {
      if (w(i, i + 1) != 0.0) {
        b_idx = i + 1;
        found = true;
        break;
      }
    }
    if (!found) break;  // fully diagonal
    std::size_t a_idx = b_idx - 1;
    while (a_idx > 0 && w(a_idx - 1, a_idx) != 0.0) --a_idx;

    // Deflation for exact zeros on the diagonal of the block.
    bool deflated = false;
    for (std::size_t i = a_idx; i < b_idx; ++i) {
      if (w(i, i) == 0.0) {
        chase_intermediate_zero(w, u_acc, i, b_idx, flops);
        deflated = true;
        break;
      }
    }
    if (deflated) continue;
    if (w(b_idx, b_idx) == 0.0) {
      chase_trailing_zero(w, v_acc, a_idx, b_idx, flops);
      continue;
    }

    if (steps >= step_budget) {
      throw ConvergenceError(
          "bidiag_svd: no convergence after " + std::to_string(max_sweeps) +
              " sweeps (" + std::to_string(step_budget) + " steps)",
          superdiag_norm(w));
    }
    golub_kahan_step(w, u_acc, v_acc, a_idx, b_idx, flops);
    ++steps;
  }

  // Collect singular values: make them non-negative, undo the scaling,
  // then sort descending.
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = w(i, i);
    if (d < 0.0) {
      d = -d;
      for (std::size_t r = 0; r < n; ++r) u_acc(r, i) = -u_acc(r, i);
    }
    sigma[i] = d * scale;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult out;
  out.sigma.resize(n);
  out.u = Matrix(n, n);
  out.v = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.sigma[k] = sigma[order[k]];
    for (std::size_t r = 0; r < n; ++r) {
      out.u(r, k) = u_acc(r, order[k]);
      out.v(r, k) = v_acc(r, order[k]);
    }
  }
  ensure_finite(out.u, "bidiag_svd (U)");
  ensure_finite(out.v, "bidiag_svd (V)");
  return out;
}

}  // namespace costlab::linalg
