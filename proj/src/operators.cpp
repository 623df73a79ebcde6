#include "ubk/operators.hpp"

#include "ubk/errors.hpp"
#include "ubk/rng.hpp"

#include <cmath>
#include <utility>

namespace ubk {

Matrix LinearOperator::apply(const Matrix& x) const {
  if (x.rows() != dim_)
    throw DimensionMismatch("LinearOperator::apply: block row count != dim");
  return apply_impl(x);
}

Matrix LinearOperator::apply_adjoint(const Matrix& x) const {
  if (!has_adjoint_)
    throw AdjointUnavailable("LinearOperator: adjoint application unavailable");
  if (x.rows() != dim_)
    throw DimensionMismatch("LinearOperator::apply_adjoint: block row count != dim");
  return apply_adjoint_impl(x);
}

Matrix LinearOperator::to_dense() const {
  return apply(Matrix::Identity(dim(), dim()));
}

namespace {

class SparseOperator final : public LinearOperator {
public:
  SparseOperator(SparseComplexMatrix a, bool is_unitary, bool is_normal)
      : LinearOperator(a.dim(), true, is_unitary, is_normal),
        a_(std::move(a)),
        ah_(a_.adjoint()) {}

  Matrix apply_impl(const Matrix& x) const override { return a_.apply(x); }
  Matrix apply_adjoint_impl(const Matrix& x) const override { return ah_.apply(x); }

private:
  SparseComplexMatrix a_;
  SparseComplexMatrix ah_;
};

class DenseOperator final : public LinearOperator {
public:
  DenseOperator(Matrix a, bool is_unitary, bool is_normal)
      : LinearOperator(a.rows(), true, is_unitary, is_normal), a_(std::move(a)) {
    if (a_.rows() != a_.cols())
      throw InvalidParameter("DenseOperator: square matrix required");
  }

  Matrix apply_impl(const Matrix& x) const override { return a_ * x; }
  Matrix apply_adjoint_impl(const Matrix& x) const override { return a_.adjoint() * x; }

private:
  Matrix a_;
};

class FactoredFloquetOperator final : public LinearOperator {
public:
  FactoredFloquetOperator(SparseComplexMatrix f1, SparseComplexMatrix f2)
      : LinearOperator(f1.dim(), true, true, true),
        f1_(std::move(f1)),
        f2_(std::move(f2)),
        f1h_(f1_.adjoint()),
        f2h_(f2_.adjoint()) {}

  Matrix apply_impl(const Matrix& x) const override { return f1_.apply(f2_.apply(x)); }
  Matrix apply_adjoint_impl(const Matrix& x) const override {
    return f2h_.apply(f1h_.apply(x));
  }

private:
  SparseComplexMatrix f1_, f2_, f1h_, f2h_;
};

class SpectrumOperator final : public LinearOperator {
public:
  SpectrumOperator(Vector values, Matrix vectors, bool is_unitary)
      : LinearOperator(vectors.rows(), true, is_unitary, true) {
    eig_.values = std::move(values);
    eig_.vectors = std::move(vectors);
  }

  Matrix apply_impl(const Matrix& x) const override {
    return eig_.vectors * (eig_.values.asDiagonal() * (eig_.vectors.adjoint() * x));
  }
  Matrix apply_adjoint_impl(const Matrix& x) const override {
    return eig_.vectors * (eig_.values.conjugate().asDiagonal() * (eig_.vectors.adjoint() * x));
  }
  const Eigensystem* eigensystem() const override { return &eig_; }

private:
  Eigensystem eig_;
};

void check_floquet_params(const std::vector<cx>& alpha) {
  if (alpha.empty() || alpha.size() % 2 != 0)
    throw InvalidParameter("floquet_unitary: n must be even and positive");
  for (const cx& a : alpha)
    if (std::abs(a) >= 1.0)
      throw InvalidParameter("floquet_unitary: |alpha_j| < 1 required");
}

double rho_of(const cx& a) { return std::sqrt(1.0 - std::norm(a)); }

} // namespace

OperatorPtr make_sparse_operator(SparseComplexMatrix a, bool is_unitary, bool is_normal) {
  return std::make_unique<SparseOperator>(std::move(a), is_unitary, is_normal || is_unitary);
}

OperatorPtr make_dense_operator(Matrix a, bool is_unitary, bool is_normal) {
  return std::make_unique<DenseOperator>(std::move(a), is_unitary, is_normal || is_unitary);
}

SparseComplexMatrix floquet_factor1(const std::vector<cx>& alpha) {
  check_floquet_params(alpha);
  const Eigen::Index n = static_cast<Eigen::Index>(alpha.size());
  std::vector<SparseComplexMatrix::Triplet> tr;
  tr.reserve(static_cast<size_t>(2 * n));
  // Blocks Theta(alpha_1), Theta(alpha_3), ... on row pairs (0,1), (2,3), ...
  for (Eigen::Index j = 0; j < n; j += 2) {
    const cx a = alpha[static_cast<size_t>(j)];  // alpha_{j+1}, 1-based odd
    const double r = rho_of(a);
    tr.push_back({j, j, std::conj(a)});
    tr.push_back({j, j + 1, r});
    tr.push_back({j + 1, j, r});
    tr.push_back({j + 1, j + 1, -a});
  }
  return SparseComplexMatrix::from_triplets(n, std::move(tr));
}

SparseComplexMatrix floquet_factor2(const std::vector<cx>& alpha) {
  check_floquet_params(alpha);
  const Eigen::Index n = static_cast<Eigen::Index>(alpha.size());
  std::vector<SparseComplexMatrix::Triplet> tr;
  tr.reserve(static_cast<size_t>(2 * n));
  // Wrapped block of alpha_n in the corners, Theta(alpha_2), ...,
  // Theta(alpha_{n-2}) on row pairs (1,2), (3,4), ...
  const cx an = alpha.back();
  const double rn = rho_of(an);
  tr.push_back({0, 0, std::conj(an)});
  tr.push_back({0, n - 1, rn});
  tr.push_back({n - 1, 0, rn});
  tr.push_back({n - 1, n - 1, -an});
  for (Eigen::Index j = 1; j + 1 < n; j += 2) {
    const cx a = alpha[static_cast<size_t>(j)];  // alpha_{j+1}, 1-based even
    const double r = rho_of(a);
    tr.push_back({j, j, std::conj(a)});
    tr.push_back({j, j + 1, r});
    tr.push_back({j + 1, j, r});
    tr.push_back({j + 1, j + 1, -a});
  }
  return SparseComplexMatrix::from_triplets(n, std::move(tr));
}

OperatorPtr floquet_unitary(const std::vector<cx>& alpha, FloquetAssembly assemble) {
  SparseComplexMatrix f1 = floquet_factor1(alpha);
  SparseComplexMatrix f2 = floquet_factor2(alpha);
  if (assemble == FloquetAssembly::Factored)
    return std::make_unique<FactoredFloquetOperator>(std::move(f1), std::move(f2));
  return make_sparse_operator(f1.multiply(f2), /*is_unitary=*/true);
}

OperatorPtr unitary_with_spectrum(const Vector& eigenvalues, std::uint64_t seed, double tol) {
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j)
    if (std::abs(std::abs(eigenvalues(j)) - 1.0) > tol)
      throw InvalidParameter("unitary_with_spectrum: eigenvalue off the unit circle");
  rng::Engine eng(seed);
  Matrix u = rng::haar_unitary(eigenvalues.size(), eng);
  return std::make_unique<SpectrumOperator>(eigenvalues, std::move(u), /*is_unitary=*/true);
}

OperatorPtr normal_with_spectrum(const Vector& eigenvalues, std::uint64_t seed) {
  rng::Engine eng(seed);
  Matrix u = rng::haar_unitary(eigenvalues.size(), eng);
  return std::make_unique<SpectrumOperator>(eigenvalues, std::move(u), /*is_unitary=*/false);
}

} // namespace ubk
