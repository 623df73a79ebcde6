#include "ubk/matpoly.hpp"

#include "ubk/dense.hpp"
#include "ubk/errors.hpp"
#include "ubk/kernels.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ubk {

namespace {

void check_block(const Matrix& c, Eigen::Index s, const char* what) {
  if (c.rows() != s || c.cols() != s) throw DimensionMismatch(std::string(what) + ": bad coefficient shape");
  if (!c.allFinite()) throw InvalidParameter(std::string(what) + ": nonfinite coefficient");
}

} // namespace

MatrixPolynomial::MatrixPolynomial(Eigen::Index block_size, std::vector<Matrix> coeffs)
    : s_(block_size), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidParameter("MatrixPolynomial: no coefficients");
  for (const Matrix& c : coeffs_) check_block(c, s_, "MatrixPolynomial");
}

MatrixPolynomial MatrixPolynomial::identity(Eigen::Index block_size) {
  return MatrixPolynomial(block_size, {Matrix::Identity(block_size, block_size)});
}

MatrixPolynomial MatrixPolynomial::monomial(Eigen::Index block_size, Eigen::Index degree) {
  std::vector<Matrix> c(static_cast<size_t>(degree) + 1,
                        Matrix::Zero(block_size, block_size));
  c.back() = Matrix::Identity(block_size, block_size);
  return MatrixPolynomial(block_size, std::move(c));
}

Matrix MatrixPolynomial::evaluate(const cx& z) const {
  Matrix acc = coeffs_.back();
  for (Eigen::Index k = degree() - 1; k >= 0; --k)
    acc = z * acc + coeffs_[static_cast<size_t>(k)];
  return acc;
}

LaurentMatrixPolynomial::LaurentMatrixPolynomial(Eigen::Index block_size,
                                                 Eigen::Index low_exponent,
                                                 std::vector<Matrix> coeffs)
    : s_(block_size), low_(low_exponent), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidParameter("LaurentMatrixPolynomial: no coefficients");
  for (const Matrix& c : coeffs_) check_block(c, s_, "LaurentMatrixPolynomial");
}

LaurentMatrixPolynomial LaurentMatrixPolynomial::from_polynomial(const MatrixPolynomial& p,
                                                                 Eigen::Index shift) {
  std::vector<Matrix> c;
  c.reserve(static_cast<size_t>(p.degree()) + 1);
  for (Eigen::Index k = 0; k <= p.degree(); ++k) c.push_back(p.coeff(k));
  return LaurentMatrixPolynomial(p.block_size(), shift, std::move(c));
}

const Matrix& LaurentMatrixPolynomial::coeff(Eigen::Index exponent) const {
  if (exponent < low_ || exponent > high_exponent())
    throw InvalidParameter("LaurentMatrixPolynomial: exponent out of range");
  return coeffs_[static_cast<size_t>(exponent - low_)];
}

Matrix LaurentMatrixPolynomial::evaluate(const cx& z) const {
  if (z == cx(0.0) && low_ < 0)
    throw InvalidParameter("LaurentMatrixPolynomial: evaluation at zero");
  Matrix acc = Matrix::Zero(s_, s_);
  for (Eigen::Index e = low_; e <= high_exponent(); ++e) {
    cx w = (e >= 0) ? std::pow(z, static_cast<double>(e))
                    : std::pow(cx(1.0) / z, static_cast<double>(-e));
    acc += w * coeff(e);
  }
  return acc;
}

Matrix poly_action(const MatrixPolynomial& p, const LinearOperator& a, const Matrix& b) {
  if (p.block_size() != b.cols())
    throw DimensionMismatch("poly_action: block size mismatch");
  Matrix acc = kernels::right_multiply(b, p.coeff(0));
  Matrix power = b;
  for (Eigen::Index k = 1; k <= p.degree(); ++k) {
    power = a.apply(power);
    kernels::add_product(acc, power, p.coeff(k));
  }
  return acc;
}

Matrix laurent_action(const LaurentMatrixPolynomial& r, const LinearOperator& a,
                      const Matrix& b) {
  if (r.block_size() != b.cols())
    throw DimensionMismatch("laurent_action: block size mismatch");
  if (r.low_exponent() < 0 && !a.is_unitary())
    throw InverseUnavailable("laurent_action: negative powers need a unitary operator");
  const Eigen::Index s = r.block_size();
  Matrix acc = Matrix::Zero(b.rows(), s);
  if (r.low_exponent() <= 0 && r.high_exponent() >= 0)
    kernels::add_product(acc, b, r.coeff(0));
  Matrix power = b;
  for (Eigen::Index e = 1; e <= r.high_exponent(); ++e) {
    power = a.apply(power);
    if (e >= r.low_exponent()) kernels::add_product(acc, power, r.coeff(e));
  }
  power = b;
  for (Eigen::Index e = -1; e >= r.low_exponent(); --e) {
    power = a.apply_adjoint(power);
    if (e <= r.high_exponent()) kernels::add_product(acc, power, r.coeff(e));
  }
  return acc;
}

Matrix inner_product_action(const MatrixPolynomial& p, const MatrixPolynomial& q,
                            const LinearOperator& a, const Matrix& b) {
  return kernels::inner_product(poly_action(p, a, b), poly_action(q, a, b));
}

Matrix inner_product_action(const LaurentMatrixPolynomial& r,
                            const LaurentMatrixPolynomial& t, const LinearOperator& a,
                            const Matrix& b) {
  return kernels::inner_product(laurent_action(r, a, b), laurent_action(t, a, b));
}

SpectralMeasure spectral_measure_of(const LinearOperator& a, const Matrix& b,
                                    double tol_node) {
  Vector values;
  Matrix vectors;
  if (const Eigensystem* eig = a.eigensystem()) {
    values = eig->values;
    vectors = eig->vectors;
  } else {
    if (!a.is_normal())
      throw NotNormal("spectral_measure_of: operator not marked normal");
    dense::NormalEigensystem dec = dense::normal_eigendecomposition(a.to_dense());
    values = std::move(dec.values);
    vectors = std::move(dec.vectors);
  }
  const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  if (tol_node <= 0.0) tol_node = 1e-10 * scale;

  SpectralMeasure mu;
  mu.block_size = b.cols();
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    const cx lam = values(j);
    Eigen::Index hit = -1;
    for (size_t g = 0; g < mu.nodes.size(); ++g)
      if (std::abs(mu.nodes[g] - lam) <= tol_node) {
        hit = static_cast<Eigen::Index>(g);
        break;
      }
    const Matrix ub = vectors.col(j).adjoint() * b;  // 1 x s
    const Matrix w = ub.adjoint() * ub;
    if (hit < 0) {
      mu.nodes.push_back(lam);
      mu.weights.push_back(w);
    } else {
      mu.weights[static_cast<size_t>(hit)] += w;
    }
  }
  for (Matrix& w : mu.weights) w = (w + w.adjoint()) / 2.0;
  return mu;
}

Matrix inner_product_measure(const MatrixPolynomial& p, const MatrixPolynomial& q,
                             const SpectralMeasure& mu) {
  Matrix acc = Matrix::Zero(mu.block_size, mu.block_size);
  for (size_t j = 0; j < mu.nodes.size(); ++j)
    acc += p.evaluate(mu.nodes[j]).adjoint() * mu.weights[j] * q.evaluate(mu.nodes[j]);
  return acc;
}

Matrix inner_product_measure(const LaurentMatrixPolynomial& r,
                             const LaurentMatrixPolynomial& t, const SpectralMeasure& mu) {
  Matrix acc = Matrix::Zero(mu.block_size, mu.block_size);
  for (size_t j = 0; j < mu.nodes.size(); ++j)
    acc += r.evaluate(mu.nodes[j]).adjoint() * mu.weights[j] * t.evaluate(mu.nodes[j]);
  return acc;
}

MatrixPolynomial reversed(const MatrixPolynomial& p, Eigen::Index k) {
  if (p.degree() > k) throw InvalidParameter("reversed: degree exceeds the bound k");
  const Eigen::Index s = p.block_size();
  std::vector<Matrix> c(static_cast<size_t>(k) + 1, Matrix::Zero(s, s));
  for (Eigen::Index j = 0; j <= p.degree(); ++j)
    c[static_cast<size_t>(k - j)] = p.coeff(j).adjoint();
  return MatrixPolynomial(s, std::move(c));
}

SzegoPolynomials szego_polynomials(const VerblunskySequence& alphas, Eigen::Index m) {
  if (alphas.size() < m)
    throw InvalidVerblunsky("szego_polynomials: need m coefficients");
  const Eigen::Index s = alphas.block_size();
  for (Eigen::Index k = 1; k <= m; ++k)
    if (alphas.alpha_norm(k) >= 1.0)
      throw InvalidVerblunsky("szego_polynomials: ||alpha_k||_2 >= 1");

  SzegoPolynomials out;
  out.phi_r.push_back(MatrixPolynomial::identity(s));
  out.phi_l_rev.push_back(MatrixPolynomial::identity(s));
  for (Eigen::Index k = 0; k < m; ++k) {
    const MatrixPolynomial& pr = out.phi_r.back();
    const MatrixPolynomial& pl = out.phi_l_rev.back();
    const Matrix& al = alphas.alpha(k + 1);
    // Coefficients of z*phi_r and of phi_l_rev, padded to degree k+1.
    std::vector<Matrix> cr(static_cast<size_t>(k) + 2, Matrix::Zero(s, s));
    std::vector<Matrix> cl(static_cast<size_t>(k) + 2, Matrix::Zero(s, s));
    for (Eigen::Index j = 0; j <= pr.degree(); ++j) {
      cr[static_cast<size_t>(j + 1)] += pr.coeff(j);              // z * phi_r
      cl[static_cast<size_t>(j + 1)] -= pr.coeff(j) * al;         // - z * phi_r * alpha
    }
    for (Eigen::Index j = 0; j <= pl.degree(); ++j) {
      cr[static_cast<size_t>(j)] -= pl.coeff(j) * al.adjoint();   // - phi_l_rev * alpha^*
      cl[static_cast<size_t>(j)] += pl.coeff(j);
    }
    for (Matrix& c : cr) c = dense::right_solve_hpd(c, alphas.rho_r(k + 1));
    for (Matrix& c : cl) c = dense::right_solve_hpd(c, alphas.rho_l(k + 1));
    out.phi_r.emplace_back(s, std::move(cr));
    out.phi_l_rev.emplace_back(s, std::move(cl));
  }
  return out;
}

std::vector<LaurentMatrixPolynomial> cmv_basis(const VerblunskySequence& alphas,
                                               Eigen::Index m) {
  if (m < 1) throw InvalidParameter("cmv_basis: m >= 1 required");
  SzegoPolynomials phi = szego_polynomials(alphas, m - 1);
  std::vector<LaurentMatrixPolynomial> chi;
  chi.reserve(static_cast<size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index k = j / 2;
    if (j % 2 == 0)
      chi.push_back(LaurentMatrixPolynomial::from_polynomial(
          phi.phi_l_rev[static_cast<size_t>(j)], -k));
    else
      chi.push_back(LaurentMatrixPolynomial::from_polynomial(
          phi.phi_r[static_cast<size_t>(j)], -k));
  }
  return chi;
}

namespace {

void write_block_csv(std::ostream& out, const Matrix& w) {
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      out << "," << w(i, j).real() << "," << w(i, j).imag();
}

Matrix read_block_csv(std::istringstream& in, Eigen::Index s) {
  Matrix w(s, s);
  std::string tok;
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) {
      double re = 0.0, im = 0.0;
      std::getline(in, tok, ',');
      re = std::stod(tok);
      std::getline(in, tok, ',');
      im = std::stod(tok);
      w(i, j) = cx(re, im);
    }
  return w;
}

} // namespace

void write_polynomials(const std::string& path, const std::vector<MatrixPolynomial>& ps) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("write_polynomials: cannot open " + path);
  out.precision(17);
  for (const MatrixPolynomial& p : ps) {
    out << p.block_size() << "," << p.degree();
    for (Eigen::Index k = 0; k <= p.degree(); ++k) write_block_csv(out, p.coeff(k));
    out << "\n";
  }
}

std::vector<MatrixPolynomial> read_polynomials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("read_polynomials: cannot open " + path);
  std::vector<MatrixPolynomial> ps;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::getline(ls, tok, ',');
    const Eigen::Index s = std::stol(tok);
    std::getline(ls, tok, ',');
    const Eigen::Index d = std::stol(tok);
    std::vector<Matrix> coeffs;
    for (Eigen::Index k = 0; k <= d; ++k) coeffs.push_back(read_block_csv(ls, s));
    ps.emplace_back(s, std::move(coeffs));
  }
  return ps;
}

void write_measure(const std::string& path, const SpectralMeasure& mu) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("write_measure: cannot open " + path);
  out.precision(17);
  for (size_t j = 0; j < mu.nodes.size(); ++j) {
    out << mu.nodes[j].real() << "," << mu.nodes[j].imag();
    write_block_csv(out, mu.weights[j]);
    out << "\n";
  }
}

SpectralMeasure read_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("read_measure: cannot open " + path);
  SpectralMeasure mu;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::getline(ls, tok, ',');
    const double re = std::stod(tok);
    std::getline(ls, tok, ',');
    const double im = std::stod(tok);
    // Infer s from the remaining pair count on the first line.
    if (mu.block_size == 0) {
      const auto pairs = std::count(line.begin(), line.end(), ',') - 1;
      mu.block_size = static_cast<Eigen::Index>(std::llround(std::sqrt(pairs / 2.0)));
    }
    mu.nodes.push_back(cx(re, im));
    mu.weights.push_back(read_block_csv(ls, mu.block_size));
  }
  return mu;
}

} // namespace ubk
