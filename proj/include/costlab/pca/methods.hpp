#pragma once

#include "costlab/pca/types.hpp"

namespace costlab::pca {

/// PCA by eigendecomposition of the covariance matrix: mean-center, form
/// the Gram matrix A_c'*A_c, run the symmetric eigensolver, keep the top
/// target_dims pairs.
PCAResult pca_cov_eig(const Matrix& a, std::size_t target_dims,
                      MethodTrace* trace = nullptr);

/// PCA by QR -> Givens bidiagonalization -> bidiagonal QR-iteration SVD.
/// Requires rows >= cols (the QR-first route assumes a tall matrix).
PCAResult pca_svd_bidiag(const Matrix& a, std::size_t target_dims,
                         MethodTrace* trace = nullptr);

/// Stochastic SVD: Gaussian range sampling with oversampling, optional power
/// iterations with re-orthonormalization, then an exact small eigensolve on
/// the projected matrix.
PCAResult ssvd(const Matrix& a, const SsvdParams& params,
               MethodTrace* trace = nullptr);

/// Probabilistic PCA fit by EM on the latent model y = C x + mu + noise.
/// Stops when the relative change in the 1-norm reconstruction error falls
/// below params.tol (or the error reaches machine-precision scale), else
/// after max_iter iterations with converged=false. The Standard and
/// Recompute modes run identical arithmetic; they differ only in what the
/// simulator ships.
PCAResult ppca_em(const Matrix& a, const PpcaParams& params,
                  MethodTrace* trace = nullptr);

/// Entrywise 1-norm of (y_centered - x * c'): shapes N x D, N x d, D x d.
double reconstruction_error_1norm(const Matrix& y_centered, const Matrix& x,
                                  const Matrix& c);

}  // namespace costlab::pca
