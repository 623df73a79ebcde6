#pragma once

#include "ubk/types.hpp"

#include <vector>

namespace ubk {

// The s x s recurrence parameters of orthogonal matrix polynomials on the
// unit circle, together with the derived factors
//   rho_r = (I - alpha alpha*)^{1/2},  rho_l = (I - alpha* alpha)^{1/2}.
// Coefficients are 1-based, matching the recurrence indexing. All stored
// coefficients satisfy ||alpha_k||_2 < 1 except possibly the final one,
// which may sit on the closed unit ball (it parametrizes the last projected
// column and never needs an invertible rho).
class VerblunskySequence {
public:
  explicit VerblunskySequence(Eigen::Index block_size) : s_(block_size) {}

  Eigen::Index block_size() const { return s_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(alpha_.size()); }

  // Appends alpha_{size()+1}. Throws InvalidVerblunsky when the spectral
  // norm is >= 1 (or > 1 + tol when allow_boundary is set).
  void append(const Matrix& alpha, bool allow_boundary = false);

  const Matrix& alpha(Eigen::Index k) const;   // k = 1..size()
  const Matrix& rho_r(Eigen::Index k) const;
  const Matrix& rho_l(Eigen::Index k) const;
  double alpha_norm(Eigen::Index k) const;

private:
  Eigen::Index s_;
  std::vector<Matrix> alpha_, rho_r_, rho_l_;
  std::vector<double> norms_;
};

} // namespace ubk
