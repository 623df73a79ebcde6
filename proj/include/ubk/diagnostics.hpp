#pragma once

#include "ubk/krylov.hpp"
#include "ubk/operators.hpp"
#include "ubk/types.hpp"
#include "ubk/verblunsky.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ubk {

// W^* W for the concatenated basis; assembled blockwise with the parallel
// kernels.
Matrix gram_matrix(const BlockBasis& basis);

// W^* (A W), the projected operator.
Matrix projection_matrix(const LinearOperator& a, const BlockBasis& basis);

// || W^* W - I ||_F, the loss of orthogonality.
double orthogonality_error(const BlockBasis& basis);

// || W^* A W - T ||_F, the accuracy of the projection.
double projection_error(const LinearOperator& a, const BlockBasis& basis, const Matrix& t);
double projection_error(const LinearOperator& a, const BlockBasis& basis,
                        const BlockHessenberg& t);
double projection_error(const LinearOperator& a, const BlockBasis& basis,
                        const CMVStructure& t);

// Sorted distances |theta_i - target| of the eigenvalues of the projected
// matrix to the target; the first j_max of them.
std::vector<double> ritz_distances(const Matrix& t, cx target, Eigen::Index j_max);

// Maximum gap of an eigenvalue pairing between two same-size matrices.
// Greedy matching on phase-sorted spectra; falls back to an optimal
// bottleneck assignment when phases are ambiguous or the greedy gap is not
// already negligible.
double eigenvalue_matching_gap(const Matrix& lhs, const Matrix& rhs);
double similarity_check(const BlockHessenberg& h, const CMVStructure& c);

struct VerblunskyReport {
  std::vector<double> norms;            // ||alpha_k||_2
  std::vector<double> rho_r_residuals;  // || rho_r^2 - (I - alpha alpha*) ||_F
  std::vector<double> rho_l_residuals;
  std::vector<double> min_gram_eigenvalues;  // lambda_min(I - alpha alpha*)
  bool ok(double norm_cap = 1.0, double residual_cap = 1e-12) const;
};
VerblunskyReport verify_verblunsky(const VerblunskySequence& alphas);

// One per-step record of an experiment sweep.
struct ExperimentRecord {
  Eigen::Index m = 0;
  double eps_orth = 0.0;
  double eps_proj = 0.0;
  double wall_time_s = 0.0;
  long operator_applications = 0;
  long block_inner_products = 0;
  std::string status = "ok";  // ok | deflated
};

struct ExperimentResult {
  std::string algorithm;  // arnoldi | isometric | cmv | laurent_gs
  std::uint64_t seed = 0;
  Eigen::Index n = 0;
  Eigen::Index s = 0;
  std::vector<ExperimentRecord> records;
};

// Minimal CSV table: header row plus string cells, comma separated.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  void write(const std::string& path) const;
};

// Merges per-algorithm sweeps into one table with columns m,
// time_<alg>..., orth_<alg>..., proj_<alg>..., applies_<alg>...,
// inner_<alg>..., status_<alg>.... The m schedule is the union over the
// sweeps; cells of a sweep that stopped early (deflation) read nan.
CsvTable experiment_table(const std::vector<ExperimentResult>& results);

std::string format_double(double v);

} // namespace ubk
