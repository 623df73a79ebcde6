#include "ubk/dense.hpp"
#include "ubk/diagnostics.hpp"
#include "ubk/errors.hpp"
#include "ubk/krylov.hpp"
#include "ubk/operators.hpp"
#include "ubk/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>

using namespace ubk;

namespace {

OperatorPtr random_floquet(Eigen::Index n, rng::Engine& eng) {
  std::vector<cx> a(static_cast<size_t>(n));
  for (auto& v : a) v = rng::uniform_disk(eng);
  return floquet_unitary(a);
}

OperatorPtr diag_pm1() {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  return make_dense_operator(d, true, true);
}

Matrix half_vector() {
  Matrix b(2, 1);
  b << cx(1.0 / std::sqrt(2.0)), cx(1.0 / std::sqrt(2.0));
  return b;
}

// Orthogonal projector difference between the column spans of two bases.
double projector_gap(const BlockBasis& x, const BlockBasis& y) {
  const Matrix xm = x.to_matrix();
  const Matrix ym = y.to_matrix();
  return (xm * xm.adjoint() - ym * ym.adjoint()).norm();
}

} // namespace

TEST_CASE("block_arnoldi breaks down for A = I") {
  rng::Engine eng(81);
  OperatorPtr a = make_dense_operator(Matrix::Identity(8, 8), true, true);
  Matrix b0 = rng::gaussian_block(8, 2, eng);
  Eigen::HouseholderQR<Matrix> qr(b0);
  const Matrix b = qr.householderQ() * Matrix::Identity(8, 2);

  const ArnoldiResult r = block_arnoldi(*a, b, 4);
  REQUIRE(r.deflation.has_value());
  CHECK(r.deflation->step == 1);
  CHECK(r.deflation->rank == 0);
  CHECK(r.deflation->breakdown());
  CHECK(r.basis.size() == 1);
}

TEST_CASE("block_arnoldi two-step example") {
  OperatorPtr a = diag_pm1();
  const ArnoldiResult r = block_arnoldi(*a, half_vector(), 2);
  REQUIRE(!r.deflation);
  CHECK(std::abs(r.hess.block(1, 1)(0, 0)) <= 1e-15);
  CHECK(std::abs(r.hess.block(2, 1)(0, 0) - cx(1.0)) <= 1e-14);
  Matrix v2(2, 1);
  v2 << cx(1.0 / std::sqrt(2.0)), cx(-1.0 / std::sqrt(2.0));
  CHECK(std::min((r.basis.blocks[1] - v2).norm(), (r.basis.blocks[1] + v2).norm()) <= 1e-14);
}

TEST_CASE("block_arnoldi on a random unitary") {
  rng::Engine eng(82);
  OperatorPtr a = make_dense_operator(rng::haar_unitary(40, eng), true, true);
  const Matrix b = rng::gaussian_block(40, 3, eng);
  const ArnoldiResult r = block_arnoldi(*a, b, 8);
  REQUIRE(!r.deflation);
  CHECK(orthogonality_error(r.basis) <= 1e-12);
  CHECK(projection_error(*a, r.basis, r.hess) <= 1e-12);
  // Counter contract: m(m-1)/2 + (m-1) block inner products.
  CHECK(r.counters.block_inner_products == 8 * 7 / 2 + 7);
  CHECK(r.counters.operator_applications == 7);
}

TEST_CASE("block_arnoldi rejects a rank-deficient start") {
  rng::Engine eng(83);
  OperatorPtr a = make_dense_operator(rng::haar_unitary(8, eng), true, true);
  Matrix b(8, 2);
  b.col(0) = rng::gaussian_block(8, 1, eng);
  b.col(1) = 2.0 * b.col(0);
  CHECK_THROWS_AS((void)block_arnoldi(*a, b, 3), InvalidStart);
}

TEST_CASE("start normalization records the factor") {
  rng::Engine eng(84);
  OperatorPtr a = make_dense_operator(rng::haar_unitary(10, eng), true, true);
  const Matrix b = rng::gaussian_block(10, 2, eng);
  const ArnoldiResult r = block_arnoldi(*a, b, 3);
  CHECK((r.basis.blocks[0] * r.start_factor - b).norm() <= 1e-12 * b.norm());
}

TEST_CASE("isometric arnoldi scalar example with boundary finalization") {
  OperatorPtr a = diag_pm1();
  IsometricResult r = block_isometric_arnoldi(*a, half_vector(), 2);
  REQUIRE(!r.deflation);
  CHECK(std::abs(r.alphas.alpha(1)(0, 0)) <= 1e-15);
  finalize_alpha_m(*a, r);
  CHECK(std::abs(std::abs(r.alphas.alpha(2)(0, 0)) - 1.0) <= 1e-12);  // boundary

  // Asking for a third step hits the overflow stop instead.
  const IsometricResult r3 = block_isometric_arnoldi(*a, half_vector(), 3);
  REQUIRE(r3.deflation.has_value());
  CHECK(r3.deflation->step == 2);
  CHECK(r3.deflation->rank == 0);
}

TEST_CASE("isometric arnoldi free case") {
  OperatorPtr a = floquet_unitary(std::vector<cx>(8, cx(0.0)));
  Matrix b = Matrix::Zero(8, 1);
  b(0, 0) = 1.0;
  const IsometricResult r = block_isometric_arnoldi(*a, b, 4);
  REQUIRE(!r.deflation);
  for (Eigen::Index k = 1; k <= 3; ++k) CHECK(r.alphas.alpha_norm(k) <= 1e-14);
  for (size_t k = 0; k + 1 < 4; ++k)
    CHECK((r.basis.blocks[k + 1] - a->apply(r.basis.blocks[k])).norm() <= 1e-13);
}

TEST_CASE("isometric arnoldi invariants on a Floquet matrix") {
  rng::Engine eng(85);
  OperatorPtr a = random_floquet(64, eng);
  const Matrix b = rng::gaussian_block(64, 2, eng);
  const Eigen::Index m = 8;
  IsometricResult r = block_isometric_arnoldi(*a, b, m);
  REQUIRE(!r.deflation);
  CHECK(orthogonality_error(r.basis) <= 1e-12);
  CHECK(r.counters.block_inner_products == m - 1);
  CHECK(r.counters.operator_applications == m - 1);

  // Eq. (4.5): alpha_k = V_k^* A^* Vt_k recomputed post hoc.
  for (Eigen::Index k = 1; k < m; ++k) {
    const Matrix want = r.basis.blocks[static_cast<size_t>(k - 1)].adjoint() *
                        a->apply_adjoint(r.aux.blocks[static_cast<size_t>(k - 1)]);
    CHECK((r.alphas.alpha(k) - want).norm() <= 1e-12);
  }

  // rho identity: rho_r alpha = alpha rho_l.
  for (Eigen::Index k = 1; k < m; ++k)
    CHECK((r.alphas.rho_r(k) * r.alphas.alpha(k) -
           r.alphas.alpha(k) * r.alphas.rho_l(k)).norm() <= 1e-12);

  // Auxiliary recurrence reproduces Vt from {V_h, alpha_h}.
  Matrix t = r.basis.blocks[0];
  for (Eigen::Index k = 1; k < m; ++k) {
    Matrix next = t - a->apply(r.basis.blocks[static_cast<size_t>(k - 1)]) * r.alphas.alpha(k);
    t = dense::right_solve_hpd(next, r.alphas.rho_l(k));
    CHECK((t - r.aux.blocks[static_cast<size_t>(k)]).norm() <= 1e-10);
  }

  // Same space as full-orthogonalization Arnoldi.
  const ArnoldiResult full = block_arnoldi(*a, b, m);
  CHECK(projector_gap(r.basis, full.basis) <= 1e-9);

  // Nested: the first k blocks are the blocks of the order-k run.
  const IsometricResult rk = block_isometric_arnoldi(*a, b, 5);
  for (size_t k = 0; k < 5; ++k)
    CHECK((rk.basis.blocks[k] - r.basis.blocks[k]).norm() <= 1e-13);
}

TEST_CASE("isometric arnoldi detects A = I immediately") {
  rng::Engine eng(86);
  OperatorPtr a = make_dense_operator(Matrix::Identity(6, 6), true, true);
  Matrix b0 = rng::gaussian_block(6, 2, eng);
  Eigen::HouseholderQR<Matrix> qr(b0);
  const Matrix b = qr.householderQ() * Matrix::Identity(6, 2);
  const IsometricResult r = block_isometric_arnoldi(*a, b, 3);
  REQUIRE(r.deflation.has_value());
  CHECK(r.deflation->step == 1);
  CHECK(r.deflation->rank == 0);
}

TEST_CASE("hessenberg_from_schur free case and m = 1") {
  VerblunskySequence zero(1);
  for (int k = 0; k < 4; ++k) zero.append(Matrix::Zero(1, 1));
  const Matrix h = hessenberg_from_schur(zero, 4).to_dense();
  Matrix shift = Matrix::Zero(4, 4);
  for (Eigen::Index i = 1; i < 4; ++i) shift(i, i - 1) = 1.0;
  CHECK((h - shift).norm() <= 1e-15);

  rng::Engine eng(87);
  VerblunskySequence one(2);
  one.append(0.3 * rng::haar_unitary(2, eng));
  const BlockHessenberg h1 = hessenberg_from_schur(one, 1);
  CHECK((h1.block(1, 1) - one.alpha(1).adjoint()).norm() <= 1e-15);
}

TEST_CASE("hessenberg and schur factorization match the projection") {
  rng::Engine eng(88);
  OperatorPtr a = random_floquet(64, eng);
  const Matrix b = rng::gaussian_block(64, 2, eng);
  const Eigen::Index m = 7;
  IsometricResult r = block_isometric_arnoldi(*a, b, m);
  REQUIRE(!r.deflation);
  finalize_alpha_m(*a, r);

  const BlockHessenberg h = hessenberg_from_schur(r.alphas, m);
  CHECK(projection_error(*a, r.basis, h) <= 1e-10);

  const SchurFactors fac = schur_factorization(r.alphas, m);
  for (const Matrix& g : fac.factors)
    CHECK((g.adjoint() * g - Matrix::Identity(g.rows(), g.cols())).norm() <= 1e-13);
  CHECK((fac.product() - h.to_dense()).norm() <= 1e-12);
}

TEST_CASE("schur factors in the scalar free case are swaps") {
  VerblunskySequence zero(1);
  for (int k = 0; k < 3; ++k) zero.append(Matrix::Zero(1, 1));
  const SchurFactors fac = schur_factorization(zero, 3);
  // G_1 swaps coordinates 1, 2.
  Matrix swap = Matrix::Identity(3, 3);
  swap(0, 0) = swap(1, 1) = 0.0;
  swap(0, 1) = swap(1, 0) = 1.0;
  CHECK((fac.factors[0] - swap).norm() <= 1e-15);
}

TEST_CASE("cmv_cutoff free case pattern") {
  VerblunskySequence zero(1);
  for (int k = 0; k < 6; ++k) zero.append(Matrix::Zero(1, 1));
  const CMVStructure c = cmv_cutoff(zero, 6);
  const Matrix d = c.to_dense();
  // Nonzeros exactly at (2,1), (1,3), (4,2), (3,5), (6,4): value 1.
  Matrix want = Matrix::Zero(6, 6);
  want(1, 0) = want(0, 2) = want(3, 1) = want(2, 4) = want(5, 3) = 1.0;
  CHECK((d - want).norm() == 0.0);

  VerblunskySequence one(1);
  Matrix a1(1, 1);
  a1(0, 0) = cx(0.2, 0.4);
  one.append(a1);
  const CMVStructure c1 = cmv_cutoff(one, 1);
  CHECK(std::abs(c1.to_dense()(0, 0) - std::conj(a1(0, 0))) <= 1e-15);
}

TEST_CASE("cmv pattern predicate matches the banded structure") {
  // Column 1 holds rows 1..2; even columns rows j-1..j+2; odd columns rows j-2..j+1.
  CHECK(CMVStructure::in_pattern(1, 1));
  CHECK(CMVStructure::in_pattern(2, 1));
  CHECK(!CMVStructure::in_pattern(3, 1));
  CHECK(CMVStructure::in_pattern(1, 2));
  CHECK(CMVStructure::in_pattern(4, 2));
  CHECK(!CMVStructure::in_pattern(5, 2));
  CHECK(CMVStructure::in_pattern(1, 3));
  CHECK(CMVStructure::in_pattern(4, 3));
  CHECK(!CMVStructure::in_pattern(5, 3));
  CHECK(!CMVStructure::in_pattern(1, 4));
}

TEST_CASE("cmv arnoldi free case visits B, AB, A*B, A^2 B") {
  OperatorPtr a = floquet_unitary(std::vector<cx>(8, cx(0.0)));
  Matrix b = Matrix::Zero(8, 1);
  b(0, 0) = 1.0;
  const CmvResult r = block_cmv_arnoldi(*a, b, 4);
  REQUIRE(!r.deflation);
  CHECK((r.basis.blocks[1] - a->apply(b)).norm() <= 1e-13);
  CHECK((r.basis.blocks[2] - a->apply_adjoint(b)).norm() <= 1e-13);
  CHECK((r.basis.blocks[3] - a->apply(a->apply(b))).norm() <= 1e-13);
}

TEST_CASE("cmv arnoldi scalar example exhausts the space") {
  OperatorPtr a = diag_pm1();
  const CmvResult r = block_cmv_arnoldi(*a, half_vector(), 3);
  REQUIRE(r.deflation.has_value());
  CHECK(r.deflation->step == 2);
  CHECK(std::abs(r.alphas.alpha(1)(0, 0)) <= 1e-14);
}

TEST_CASE("cmv arnoldi invariants on a Floquet matrix") {
  rng::Engine eng(89);
  OperatorPtr a = random_floquet(64, eng);
  const Matrix b = rng::gaussian_block(64, 2, eng);
  const Eigen::Index m = 8;
  CmvResult r = block_cmv_arnoldi(*a, b, m);
  REQUIRE(!r.deflation);
  CHECK(orthogonality_error(r.basis) <= 1e-11);
  CHECK(r.counters.block_inner_products == m - 1);
  CHECK(r.counters.operator_applications == m - 1);
  CHECK(!r.finalized);

  cmv_finalize_alpha(*a, r);
  CHECK(r.finalized);
  CHECK(r.counters.finalize_inner_products == 1);
  CHECK(projection_error(*a, r.basis, r.cmv) <= 1e-10);

  // Blocks outside the pattern are exactly zero.
  const Matrix d = r.cmv.to_dense();
  for (Eigen::Index i = 1; i <= m; ++i)
    for (Eigen::Index j = 1; j <= m; ++j)
      if (!CMVStructure::in_pattern(i, j)) CHECK(r.cmv.block(i, j).norm() == 0.0);
  CHECK(d.rows() == m * 2);

  // Same space as the reorthogonalized extended baseline.
  const ExtendedResult ext = block_extended_arnoldi(*a, b, m);
  REQUIRE(!ext.deflation);
  CHECK(projector_gap(r.basis, ext.basis) <= 1e-9);

  // Nested prefix.
  const CmvResult rk = block_cmv_arnoldi(*a, b, 5);
  for (size_t k = 0; k < 5; ++k)
    CHECK((rk.basis.blocks[k] - r.basis.blocks[k]).norm() <= 1e-12);
}

TEST_CASE("cmv cutoff equals the leading part of larger cutoffs") {
  rng::Engine eng(90);
  VerblunskySequence alphas(2);
  for (int k = 0; k < 8; ++k) alphas.append(0.4 * rng::haar_unitary(2, eng));
  const Matrix big = cmv_cutoff(alphas, 8).to_dense();
  for (Eigen::Index m : {3, 5, 6}) {
    const Matrix small = cmv_cutoff(alphas, m).to_dense();
    CHECK((big.topLeftCorner(2 * m, 2 * m) - small).norm() == 0.0);
  }
}

TEST_CASE("cmv arnoldi detects A = I immediately") {
  rng::Engine eng(91);
  OperatorPtr a = make_dense_operator(Matrix::Identity(6, 6), true, true);
  Matrix b0 = rng::gaussian_block(6, 2, eng);
  Eigen::HouseholderQR<Matrix> qr(b0);
  const Matrix b = qr.householderQ() * Matrix::Identity(6, 2);
  const CmvResult r = block_cmv_arnoldi(*a, b, 3);
  REQUIRE(r.deflation.has_value());
  CHECK(r.deflation->step == 1);
  CHECK(r.deflation->rank == 0);
}

TEST_CASE("extended arnoldi basics") {
  rng::Engine eng(92);
  OperatorPtr a = random_floquet(32, eng);
  Matrix b0 = rng::gaussian_block(32, 2, eng);
  Eigen::HouseholderQR<Matrix> qr(b0);
  const Matrix b = qr.householderQ() * Matrix::Identity(32, 2);

  const ExtendedResult one = block_extended_arnoldi(*a, b, 1);
  REQUIRE(one.basis.size() == 1);
  CHECK((one.basis.blocks[0] - b).norm() <= 1e-13);

  const Eigen::Index m = 6;
  const ExtendedResult r = block_extended_arnoldi(*a, b, m);
  REQUIRE(!r.deflation);
  CHECK(orthogonality_error(r.basis) <= 1e-13);
  // Two Gram-Schmidt passes over j-1 blocks plus the QR normalization.
  long want = 0;
  for (Eigen::Index j = 2; j <= m; ++j) want += 2 * (j - 1) + 1;
  CHECK(r.counters.block_inner_products == want);

  OperatorPtr id = make_dense_operator(Matrix::Identity(32, 32), true, true);
  const ExtendedResult broke = block_extended_arnoldi(*id, b, 3);
  REQUIRE(broke.deflation.has_value());
  CHECK(broke.deflation->step == 1);
  CHECK(broke.deflation->rank == 0);
}

TEST_CASE("basis write/read round trip") {
  rng::Engine eng(93);
  OperatorPtr a = random_floquet(16, eng);
  const Matrix b = rng::gaussian_block(16, 2, eng);
  const IsometricResult r = block_isometric_arnoldi(*a, b, 4);
  REQUIRE(!r.deflation);

  const std::string path =
      (std::filesystem::temp_directory_path() / "ubk_test_basis.blk").string();
  write_basis(path, r.basis);
  const BlockBasis back = read_basis(path);
  REQUIRE(back.size() == r.basis.size());
  CHECK(back.rows == 16);
  CHECK(back.block_size == 2);
  CHECK(back.kind == SpaceKind::Polynomial);
  for (size_t k = 0; k < back.blocks.size(); ++k)
    CHECK((back.blocks[k] - r.basis.blocks[k]).norm() == 0.0);  // binary payload is exact
  std::filesystem::remove(path);
}
