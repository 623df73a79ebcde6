#pragma once

#include "ubk/operators.hpp"
#include "ubk/types.hpp"
#include "ubk/verblunsky.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ubk {

enum class SpaceKind { Polynomial, Extended };

// Ordered family of orthonormal n x s blocks.
struct BlockBasis {
  Eigen::Index rows = 0;
  Eigen::Index block_size = 0;
  SpaceKind kind = SpaceKind::Polynomial;
  std::vector<Matrix> blocks;

  Eigen::Index size() const { return static_cast<Eigen::Index>(blocks.size()); }
  Matrix to_matrix() const;  // n x (size * s) concatenation
};

struct DeflationReport {
  Eigen::Index step = 0;          // step at which the new block lost rank
  Eigen::Index rank = 0;          // 0 marks a breakdown
  double residual_norm = 0.0;
  Eigen::Index retained_rows = 0;
  Eigen::Index retained_cols = 0;
  Matrix reduced_q;               // rank-revealing factors, when available
  Matrix reduced_r;
  bool breakdown() const { return rank == 0; }
};

// Work counters; finalization (the extra step recovering the last
// recurrence coefficient) is tracked separately so cost comparisons match
// the plain basis construction.
struct Counters {
  long operator_applications = 0;
  long block_inner_products = 0;
  long finalize_applications = 0;
  long finalize_inner_products = 0;
};

// Block upper Hessenberg matrix stored by columns; column k holds blocks
// H_{1,k}..H_{min(k+1,m),k}.
class BlockHessenberg {
public:
  BlockHessenberg(Eigen::Index m, Eigen::Index s);

  Eigen::Index order() const { return m_; }
  Eigen::Index block_size() const { return s_; }
  Eigen::Index columns_set() const { return static_cast<Eigen::Index>(cols_.size()); }

  void push_column(std::vector<Matrix> blocks);  // rows 1..len
  const Matrix& block(Eigen::Index h, Eigen::Index k) const;
  bool has_block(Eigen::Index h, Eigen::Index k) const;

  // Leading order*s cutoff (subdiagonal block of the last column excluded).
  Matrix to_dense() const;

private:
  Eigen::Index m_, s_;
  std::vector<std::vector<Matrix>> cols_;
};

// Cutoff block CMV matrix. Blocks outside the banded pattern of the L*M
// factorization are identically zero.
class CMVStructure {
public:
  CMVStructure() = default;
  CMVStructure(Eigen::Index m, Eigen::Index s);

  Eigen::Index order() const { return m_; }
  Eigen::Index block_size() const { return s_; }

  static bool in_pattern(Eigen::Index i, Eigen::Index j);  // 1-based blocks

  Matrix block(Eigen::Index i, Eigen::Index j) const;
  void set_block(Eigen::Index i, Eigen::Index j, const Matrix& value);
  const Matrix& to_dense() const { return dense_; }

private:
  Eigen::Index m_ = 0, s_ = 0;
  Matrix dense_;
};

struct ArnoldiResult {
  BlockBasis basis;
  BlockHessenberg hess;
  std::optional<DeflationReport> deflation;
  Counters counters;
  Matrix start_factor;  // R with B = V_1 R
};

// Full Gram-Schmidt block Arnoldi with rank-revealing QR normalization.
// Stops at the first deflation and returns partial results. When finalize
// is set (and no deflation occurred) the last Hessenberg column is
// completed with one extra operator application.
ArnoldiResult block_arnoldi(const LinearOperator& a, const Matrix& b, Eigen::Index m,
                            double tol = -1.0, bool finalize = true);

struct IsometricResult {
  BlockBasis basis;
  BlockBasis aux;  // auxiliary blocks of the coupled recurrence
  VerblunskySequence alphas;
  std::optional<DeflationReport> deflation;
  Counters counters;
  Matrix start_factor;
};

// Short-recurrence orthogonalization for unitary A: one operator
// application and one block inner product per step.
IsometricResult block_isometric_arnoldi(const LinearOperator& a, const Matrix& b,
                                        Eigen::Index m, double eps_defl = 1e-8);

// Appends alpha_m (one extra multiplication and block inner product); the
// final coefficient may sit on the unit-ball boundary.
void finalize_alpha_m(const LinearOperator& a, IsometricResult& result);

// Block Hessenberg assembled from the recurrence coefficients; requires
// alpha_1..alpha_m with only the last allowed on the boundary.
BlockHessenberg hessenberg_from_schur(const VerblunskySequence& alphas, Eigen::Index m);

// Unitary elementary factors whose ordered product is the same matrix.
struct SchurFactors {
  std::vector<Matrix> factors;  // G_1..G_{m-1}, each m*s x m*s unitary
  Matrix final_factor;          // diag(I, alpha_m^*)
  Matrix product() const;
};
SchurFactors schur_factorization(const VerblunskySequence& alphas, Eigen::Index m);

struct CmvResult {
  BlockBasis basis;
  VerblunskySequence alphas;
  CMVStructure cmv;
  bool finalized = false;
  std::optional<DeflationReport> deflation;
  Counters counters;
  Matrix start_factor;
};

// CMV-based short-recurrence orthogonalization of the extended space.
CmvResult block_cmv_arnoldi(const LinearOperator& a, const Matrix& b, Eigen::Index m,
                            double eps_defl = 1e-8);

// Recovers alpha_m and completes the cutoff CMV matrix.
void cmv_finalize_alpha(const LinearOperator& a, CmvResult& result);

// Cutoff CMV matrix assembled from alpha_1..alpha_m.
CMVStructure cmv_cutoff(const VerblunskySequence& alphas, Eigen::Index m);

struct ExtendedResult {
  BlockBasis basis;
  std::optional<DeflationReport> deflation;
  Counters counters;
  Matrix start_factor;
};

// Reference method for the extended space: Gram-Schmidt with one
// reorthogonalization pass on the generator order B, AB, A*B, A^2 B, ...
ExtendedResult block_extended_arnoldi(const LinearOperator& a, const Matrix& b,
                                      Eigen::Index m);

// Basis dump: one text header line "ubk-basis n s m kind" followed by the
// column-major binary payload (re, im doubles) of each block in order.
void write_basis(const std::string& path, const BlockBasis& basis);
BlockBasis read_basis(const std::string& path);

} // namespace ubk
