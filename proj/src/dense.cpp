#include "ubk/dense.hpp"

#include "ubk/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

namespace ubk::dense {

QrFactors thin_qr_rank_revealing(const Matrix& w, double tol, double scale) {
  const Eigen::Index n = w.rows();
  const Eigen::Index s = w.cols();
  if (n < s || s < 1)
    throw DimensionMismatch("thin_qr_rank_revealing: need n >= s >= 1");
  if (tol < 0.0) tol = kEps * static_cast<double>(n);

  Eigen::ColPivHouseholderQR<Matrix> qr(w);
  const Matrix rfull = qr.matrixR().topRows(s).template triangularView<Eigen::Upper>();
  const double reference = std::max(std::abs(rfull(0, 0)), scale);

  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s; ++i)
    if (std::abs(rfull(i, i)) > tol * reference) ++rank;

  QrFactors out;
  out.rank = rank;
  if (rank == 0) {
    out.q = Matrix(n, 0);
    out.r = Matrix::Zero(0, s);
    return out;
  }
  if (rank == s) {
    // Full rank: redo without pivoting so that r is upper triangular.
    Eigen::HouseholderQR<Matrix> plain(w);
    out.q = plain.householderQ() * Matrix::Identity(n, s);
    out.r = plain.matrixQR().topRows(s).template triangularView<Eigen::Upper>();
    // Positive real diagonal: absorb the phases into q.
    for (Eigen::Index i = 0; i < s; ++i) {
      const cx rii = out.r(i, i);
      if (std::abs(rii) == 0.0) continue;
      const cx phase = rii / std::abs(rii);
      out.q.col(i) *= phase;
      out.r.row(i) *= std::conj(phase);
    }
    return out;
  }
  Matrix qfull = qr.householderQ() * Matrix::Identity(n, rank);
  out.q = qfull;
  out.r = rfull.topRows(rank) * qr.colsPermutation().transpose();
  return out;
}

Matrix hermitian_psd_sqrt(const Matrix& m, bool clamp_all) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("hermitian_psd_sqrt: square matrix required");
  const double nrm = frobenius_norm(m);
  constexpr double tol_herm = 1e-10;
  if (frobenius_norm(m - m.adjoint()) > tol_herm * std::max(nrm, 1e-300))
    throw NotHermitian("hermitian_psd_sqrt: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailure("hermitian_psd_sqrt: eigensolver failed");
  RealVector lam = es.eigenvalues();
  const double lam_max = lam.size() ? lam.cwiseAbs().maxCoeff() : 0.0;
  const double eps_clamp = 1e2 * kEps * lam_max;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (!clamp_all && lam(i) < -eps_clamp)
      throw IndefiniteMatrix("hermitian_psd_sqrt: negative eigenvalue below clamp");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix small_inverse(const Matrix& m, double tol_sing) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("small_inverse: square matrix required");
  if (tol_sing < 0.0) tol_sing = 1e2 * kEps;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sig = svd.singularValues();
  if (sig.size() == 0 || sig(sig.size() - 1) <= tol_sing * sig(0))
    throw SingularMatrix("small_inverse: matrix is numerically singular");
  return svd.matrixV() * sig.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
}

std::vector<cx> dense_eigenvalues(const Matrix& m, Eigen::Index dim_cap) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("dense_eigenvalues: square matrix required");
  if (m.rows() > dim_cap)
    throw InvalidParameter("dense_eigenvalues: dimension exceeds the small-matrix cap");
  Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailure("dense_eigenvalues: eigensolver did not converge");
  const Vector& v = es.eigenvalues();
  return std::vector<cx>(v.data(), v.data() + v.size());
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double frobenius_norm(const Matrix& m) { return m.norm(); }

Matrix right_solve_hpd(const Matrix& b, const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success)
    throw SingularMatrix("right_solve_hpd: Cholesky failed");
  return llt.solve(b.adjoint()).adjoint();
}

Matrix left_solve_hpd(const Matrix& a, const Matrix& b) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success)
    throw SingularMatrix("left_solve_hpd: Cholesky failed");
  return llt.solve(b);
}

NormalEigensystem normal_eigendecomposition(const Matrix& a, double tol) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("normal_eigendecomposition: square matrix required");
  Eigen::ComplexSchur<Matrix> schur(a, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw ConvergenceFailure("normal_eigendecomposition: Schur iteration failed");
  const Matrix& t = schur.matrixT();
  Matrix off = t;
  off.diagonal().setZero();
  if (frobenius_norm(off) > tol * std::max(frobenius_norm(a), 1e-300))
    throw NotNormal("normal_eigendecomposition: matrix is not normal");
  NormalEigensystem out;
  out.values = t.diagonal();
  out.vectors = schur.matrixU();
  return out;
}

} // namespace ubk::dense
