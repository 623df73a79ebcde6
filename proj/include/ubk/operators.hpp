#pragma once

#include "ubk/sparse.hpp"
#include "ubk/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace ubk {

// Retained orthonormal eigendecomposition of a normal operator.
struct Eigensystem {
  Vector values;
  Matrix vectors;  // unitary, columns are eigenvectors
};

// Matrix-free contract: apply A and (when available) A* to n x s blocks.
class LinearOperator {
public:
  virtual ~LinearOperator() = default;

  Eigen::Index dim() const { return dim_; }
  bool has_adjoint() const { return has_adjoint_; }
  bool is_unitary() const { return is_unitary_; }
  bool is_normal() const { return is_normal_; }

  Matrix apply(const Matrix& x) const;
  Matrix apply_adjoint(const Matrix& x) const;

  // Non-null for operators built from a prescribed spectrum.
  virtual const Eigensystem* eigensystem() const { return nullptr; }

  // Dense assembly, for small-scale oracles.
  Matrix to_dense() const;

protected:
  LinearOperator(Eigen::Index dim, bool has_adjoint, bool is_unitary, bool is_normal)
      : dim_(dim), has_adjoint_(has_adjoint), is_unitary_(is_unitary), is_normal_(is_normal) {}

  virtual Matrix apply_impl(const Matrix& x) const = 0;
  virtual Matrix apply_adjoint_impl(const Matrix& x) const = 0;

private:
  Eigen::Index dim_;
  bool has_adjoint_;
  bool is_unitary_;
  bool is_normal_;
};

using OperatorPtr = std::unique_ptr<LinearOperator>;

OperatorPtr make_sparse_operator(SparseComplexMatrix a, bool is_unitary = false,
                                 bool is_normal = false);
OperatorPtr make_dense_operator(Matrix a, bool is_unitary = false, bool is_normal = false);

enum class FloquetAssembly { Factored, Sparse };

// Unitary Floquet product F1 F2 built from 2x2 rotation-like blocks; n must
// be even and every |alpha_j| < 1. The factored form applies F2 then F1.
OperatorPtr floquet_unitary(const std::vector<cx>& alpha,
                            FloquetAssembly assemble = FloquetAssembly::Factored);

// The two Floquet factors, exposed for oracles.
SparseComplexMatrix floquet_factor1(const std::vector<cx>& alpha);
SparseComplexMatrix floquet_factor2(const std::vector<cx>& alpha);

// A = U diag(lambda) U* with a seeded Haar-like random U. The
// eigendecomposition is retained for spectral-measure checks.
OperatorPtr unitary_with_spectrum(const Vector& eigenvalues, std::uint64_t seed,
                                  double tol = 1e-8);
OperatorPtr normal_with_spectrum(const Vector& eigenvalues, std::uint64_t seed);

} // namespace ubk
