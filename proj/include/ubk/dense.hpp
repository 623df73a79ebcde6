#pragma once

#include "ubk/types.hpp"

#include <vector>

namespace ubk::dense {

struct QrFactors {
  Matrix q;  // n x r, orthonormal columns
  Matrix r;  // r x s, with q*r reconstructing the input
  Eigen::Index rank = 0;
};

// Rank-revealing thin QR. A column pivot is kept when its magnitude exceeds
// tol * max(largest pivot, scale); tol <= 0 selects the default eps * n and
// scale <= 0 drops the external reference. Callers orthogonalizing a
// residual must pass the pre-subtraction norm as scale, otherwise a tiny
// residual is mistaken for a well-conditioned block. Rank 0 is a valid
// result with empty factors. When the input has full column rank the
// returned r factor is upper triangular with a positive real diagonal.
QrFactors thin_qr_rank_revealing(const Matrix& w, double tol = -1.0, double scale = -1.0);

// Hermitian positive semidefinite square root via eigendecomposition.
// Eigenvalues in [-eps_clamp, 0) are clamped to zero; smaller ones raise
// IndefiniteMatrix. Throws NotHermitian when the input is not Hermitian
// to relative tolerance.
// clamp_all additionally floors every negative eigenvalue instead of
// raising, for inputs that sit on the psd boundary by construction.
Matrix hermitian_psd_sqrt(const Matrix& m, bool clamp_all = false);

// Inverse of a small square matrix through its SVD. Throws SingularMatrix
// when sigma_min <= tol_sing * sigma_max.
Matrix small_inverse(const Matrix& m, double tol_sing = -1.0);

// Eigenvalues of a small (projected) matrix. The dimension cap guards
// against accidentally feeding a full-size operator here.
std::vector<cx> dense_eigenvalues(const Matrix& m, Eigen::Index dim_cap = 4000);

double spectral_norm(const Matrix& m);
double frobenius_norm(const Matrix& m);

// x such that x * a = b, with a Hermitian positive definite.
Matrix right_solve_hpd(const Matrix& b, const Matrix& a);
// x such that a * x = b, with a Hermitian positive definite.
Matrix left_solve_hpd(const Matrix& a, const Matrix& b);

// Schur-based unitary eigendecomposition of a normal matrix: nodes plus an
// orthonormal eigenvector matrix. Throws NotNormal if ||AA*-A*A|| is large.
struct NormalEigensystem {
  Vector values;
  Matrix vectors;  // unitary, columns are eigenvectors
};
NormalEigensystem normal_eigendecomposition(const Matrix& a, double tol = 1e-10);

} // namespace ubk::dense
