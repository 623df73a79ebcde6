#include "ubk/verblunsky.hpp"

#include "ubk/dense.hpp"
#include "ubk/errors.hpp"

namespace ubk {

void VerblunskySequence::append(const Matrix& alpha, bool allow_boundary) {
  if (alpha.rows() != s_ || alpha.cols() != s_)
    throw InvalidVerblunsky("VerblunskySequence: coefficient has wrong block size");
  const double nrm = dense::spectral_norm(alpha);
  const double cap = allow_boundary ? 1.0 + 1e-8 : 1.0;
  if (nrm >= cap)
    throw InvalidVerblunsky("VerblunskySequence: ||alpha||_2 out of range");
  const Matrix eye = Matrix::Identity(s_, s_);
  Matrix gram_r = eye - alpha * alpha.adjoint();
  Matrix gram_l = eye - alpha.adjoint() * alpha;
  alpha_.push_back(alpha);
  rho_r_.push_back(dense::hermitian_psd_sqrt(gram_r, allow_boundary));
  rho_l_.push_back(dense::hermitian_psd_sqrt(gram_l, allow_boundary));
  norms_.push_back(nrm);
}

const Matrix& VerblunskySequence::alpha(Eigen::Index k) const {
  if (k < 1 || k > size()) throw InvalidVerblunsky("VerblunskySequence: index out of range");
  return alpha_[static_cast<size_t>(k - 1)];
}

const Matrix& VerblunskySequence::rho_r(Eigen::Index k) const {
  if (k < 1 || k > size()) throw InvalidVerblunsky("VerblunskySequence: index out of range");
  return rho_r_[static_cast<size_t>(k - 1)];
}

const Matrix& VerblunskySequence::rho_l(Eigen::Index k) const {
  if (k < 1 || k > size()) throw InvalidVerblunsky("VerblunskySequence: index out of range");
  return rho_l_[static_cast<size_t>(k - 1)];
}

double VerblunskySequence::alpha_norm(Eigen::Index k) const {
  if (k < 1 || k > size()) throw InvalidVerblunsky("VerblunskySequence: index out of range");
  return norms_[static_cast<size_t>(k - 1)];
}

} // namespace ubk
