#pragma once

#include "ubk/operators.hpp"
#include "ubk/types.hpp"
#include "ubk/verblunsky.hpp"

#include <string>
#include <vector>

namespace ubk {

// s x s matrix polynomial P(z) = sum_k z^k C_k, coefficients C_0..C_d.
class MatrixPolynomial {
public:
  MatrixPolynomial(Eigen::Index block_size, std::vector<Matrix> coeffs);
  static MatrixPolynomial identity(Eigen::Index block_size);
  static MatrixPolynomial monomial(Eigen::Index block_size, Eigen::Index degree);

  Eigen::Index block_size() const { return s_; }
  Eigen::Index degree() const { return static_cast<Eigen::Index>(coeffs_.size()) - 1; }
  const Matrix& coeff(Eigen::Index k) const { return coeffs_[static_cast<size_t>(k)]; }

  Matrix evaluate(const cx& z) const;

private:
  Eigen::Index s_;
  std::vector<Matrix> coeffs_;
};

// Laurent matrix polynomial with exponents low..high.
class LaurentMatrixPolynomial {
public:
  LaurentMatrixPolynomial(Eigen::Index block_size, Eigen::Index low_exponent,
                          std::vector<Matrix> coeffs);
  // z^{shift} * P(z).
  static LaurentMatrixPolynomial from_polynomial(const MatrixPolynomial& p,
                                                 Eigen::Index shift);

  Eigen::Index block_size() const { return s_; }
  Eigen::Index low_exponent() const { return low_; }
  Eigen::Index high_exponent() const { return low_ + static_cast<Eigen::Index>(coeffs_.size()) - 1; }
  const Matrix& coeff(Eigen::Index exponent) const;

  Matrix evaluate(const cx& z) const;

private:
  Eigen::Index s_;
  Eigen::Index low_;
  std::vector<Matrix> coeffs_;
};

// Discrete matrix-valued measure: nodes with Hermitian psd s x s weights.
struct SpectralMeasure {
  Eigen::Index block_size = 0;
  std::vector<cx> nodes;
  std::vector<Matrix> weights;
};

// P(A) o B = sum_k A^k B C_k, evaluated with one operator application per
// degree via a running power block.
Matrix poly_action(const MatrixPolynomial& p, const LinearOperator& a, const Matrix& b);

// Negative powers are realized through A* (unitary A only).
Matrix laurent_action(const LaurentMatrixPolynomial& r, const LinearOperator& a,
                      const Matrix& b);

// (P(A) o B)^* (Q(A) o B).
Matrix inner_product_action(const MatrixPolynomial& p, const MatrixPolynomial& q,
                            const LinearOperator& a, const Matrix& b);
Matrix inner_product_action(const LaurentMatrixPolynomial& r,
                            const LaurentMatrixPolynomial& t, const LinearOperator& a,
                            const Matrix& b);

// Spectral measure of a normal pair (A, B): nodes are eigenvalues merged
// within tol_node, weights sum (u_j^* B)^* (u_j^* B) over each group.
// tol_node <= 0 selects 1e-10 * max |lambda|.
SpectralMeasure spectral_measure_of(const LinearOperator& a, const Matrix& b,
                                    double tol_node = -1.0);

// Discrete sums sum_j P(lambda_j)^* M_j Q(lambda_j).
Matrix inner_product_measure(const MatrixPolynomial& p, const MatrixPolynomial& q,
                             const SpectralMeasure& mu);
Matrix inner_product_measure(const LaurentMatrixPolynomial& r,
                             const LaurentMatrixPolynomial& t, const SpectralMeasure& mu);

// Reversed polynomial z^k P(1/conj(z))^*: coefficients C_j -> C_{k-j}^*.
MatrixPolynomial reversed(const MatrixPolynomial& p, Eigen::Index k);

// Right orthonormal polynomials and reversed left polynomials generated by
// the coupled two-term recurrence on the unit circle; returns indices 0..m.
struct SzegoPolynomials {
  std::vector<MatrixPolynomial> phi_r;
  std::vector<MatrixPolynomial> phi_l_rev;
};
SzegoPolynomials szego_polynomials(const VerblunskySequence& alphas, Eigen::Index m);

// Orthonormal Laurent basis chi_0..chi_{m-1}: chi_{2k} = z^{-k} phi^{L,#}_{2k},
// chi_{2k+1} = z^{-k} phi^R_{2k+1}.
std::vector<LaurentMatrixPolynomial> cmv_basis(const VerblunskySequence& alphas,
                                               Eigen::Index m);

// Plain-text serialization. A polynomial file holds "s d" followed by one
// comma-separated line per coefficient (row-major re,im pairs); a measure
// file holds one line per node: re,im of the node then the s x s weight in
// row-major re,im pairs.
void write_polynomials(const std::string& path, const std::vector<MatrixPolynomial>& ps);
std::vector<MatrixPolynomial> read_polynomials(const std::string& path);
void write_measure(const std::string& path, const SpectralMeasure& mu);
SpectralMeasure read_measure(const std::string& path);

} // namespace ubk
