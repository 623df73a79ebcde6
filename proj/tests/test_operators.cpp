#include "ubk/dense.hpp"
#include "ubk/errors.hpp"
#include "ubk/operators.hpp"
#include "ubk/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace ubk;

namespace {

std::vector<cx> random_disk_params(Eigen::Index n, rng::Engine& eng) {
  std::vector<cx> a(static_cast<size_t>(n));
  for (auto& v : a) v = rng::uniform_disk(eng);
  return a;
}

} // namespace

TEST_CASE("dense operator applies A and A*") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  OperatorPtr a = make_dense_operator(d, /*is_unitary=*/true, /*is_normal=*/true);
  Matrix x(2, 1);
  x << cx(1.0 / std::sqrt(2.0)), cx(1.0 / std::sqrt(2.0));
  const Matrix y = a->apply(x);
  CHECK(std::abs(y(0, 0) - x(0, 0)) <= 1e-15);
  CHECK(std::abs(y(1, 0) + x(1, 0)) <= 1e-15);
  CHECK((a->apply_adjoint(a->apply(x)) - x).norm() <= 1e-14);
  CHECK_THROWS_AS((void)a->apply(Matrix::Zero(3, 1)), DimensionMismatch);
}

TEST_CASE("sparse operator adjoint matches the dense oracle") {
  rng::Engine eng(51);
  std::vector<SparseComplexMatrix::Triplet> t;
  std::normal_distribution<double> g;
  for (Eigen::Index i = 0; i < 5; ++i)
    for (Eigen::Index j = 0; j < 5; ++j)
      if ((i + 2 * j) % 3 == 0) t.push_back({i, j, cx(g(eng), g(eng))});
  const SparseComplexMatrix sp = SparseComplexMatrix::from_triplets(5, std::move(t));
  const Matrix d = sp.to_dense();
  OperatorPtr a = make_sparse_operator(sp);
  const Matrix x = rng::gaussian_block(5, 2, eng);
  CHECK((a->apply(x) - d * x).norm() <= 1e-13);
  CHECK((a->apply_adjoint(x) - d.adjoint() * x).norm() <= 1e-13);
}

TEST_CASE("floquet n=2 is unitary") {
  rng::Engine eng(52);
  OperatorPtr a = floquet_unitary({rng::uniform_disk(eng), rng::uniform_disk(eng)});
  const Matrix d = a->to_dense();
  CHECK((d.adjoint() * d - Matrix::Identity(2, 2)).norm() <= 1e-14);
  CHECK(a->is_unitary());
}

TEST_CASE("floquet free case is a signed permutation") {
  OperatorPtr a = floquet_unitary(std::vector<cx>(4, cx(0.0)));
  const Matrix d = a->to_dense();
  CHECK((d.adjoint() * d - Matrix::Identity(4, 4)).norm() == 0.0);
  // Each column is a signed unit coordinate vector.
  Matrix e1 = Matrix::Zero(4, 1);
  e1(0, 0) = 1.0;
  const Matrix y = a->apply(e1);
  int nonzeros = 0;
  for (Eigen::Index i = 0; i < 4; ++i)
    if (std::abs(y(i, 0)) > 0.5) ++nonzeros;
  CHECK(nonzeros == 1);
  CHECK(std::abs(y.norm() - 1.0) <= 1e-15);
}

TEST_CASE("floquet random parameters give a unitary matrix") {
  rng::Engine eng(53);
  OperatorPtr a = floquet_unitary(random_disk_params(64, eng));
  const Matrix d = a->to_dense();
  CHECK((d.adjoint() * d - Matrix::Identity(64, 64)).norm() <= 1e-13);
}

TEST_CASE("factored and sparse floquet assemblies agree") {
  rng::Engine eng(54);
  const auto params = random_disk_params(16, eng);
  OperatorPtr fac = floquet_unitary(params, FloquetAssembly::Factored);
  OperatorPtr sp = floquet_unitary(params, FloquetAssembly::Sparse);
  const Matrix x = rng::gaussian_block(16, 3, eng);
  CHECK((fac->apply(x) - sp->apply(x)).norm() <= 1e-13 * x.norm());
  CHECK((fac->apply_adjoint(x) - sp->apply_adjoint(x)).norm() <= 1e-13 * x.norm());
}

TEST_CASE("floquet rejects invalid parameters") {
  CHECK_THROWS_AS((void)floquet_unitary(std::vector<cx>(3, cx(0.0))), InvalidParameter);
  std::vector<cx> bad(4, cx(0.0));
  bad[1] = cx(1.0);
  CHECK_THROWS_AS((void)floquet_unitary(bad), InvalidParameter);
}

TEST_CASE("unitary_with_spectrum") {
  Vector ones = Vector::Ones(5);
  OperatorPtr id = unitary_with_spectrum(ones, 99);
  CHECK((id->to_dense() - Matrix::Identity(5, 5)).norm() <= 1e-13);

  Vector pm(2);
  pm << cx(1.0), cx(-1.0);
  OperatorPtr inv = unitary_with_spectrum(pm, 100);
  const Matrix d = inv->to_dense();
  CHECK((d * d - Matrix::Identity(2, 2)).norm() <= 1e-14);
  CHECK((d - d.adjoint()).norm() <= 1e-13);

  rng::Engine eng(55);
  Vector phases(50);
  for (Eigen::Index i = 0; i < 50; ++i) phases(i) = rng::uniform_circle(eng);
  OperatorPtr a = unitary_with_spectrum(phases, 101);
  auto got = dense::dense_eigenvalues(a->to_dense());
  // Round trip: every prescribed eigenvalue appears in the computed set.
  for (Eigen::Index i = 0; i < 50; ++i) {
    double best = 1e300;
    for (const cx& g : got) best = std::min(best, std::abs(g - phases(i)));
    CHECK(best <= 1e-10);
  }
  CHECK(a->eigensystem() != nullptr);

  Vector off(2);
  off << cx(1.0), cx(0.5);
  CHECK_THROWS_AS((void)unitary_with_spectrum(off, 1), InvalidParameter);
}

TEST_CASE("normal_with_spectrum") {
  Vector real(4);
  real << cx(1.0), cx(-2.0), cx(0.5), cx(3.0);
  OperatorPtr h = normal_with_spectrum(real, 7);
  const Matrix hd = h->to_dense();
  CHECK((hd - hd.adjoint()).norm() <= 1e-13);

  Vector im(2);
  im << cx(0.0, 2.0), cx(0.0, -2.0);
  OperatorPtr a = normal_with_spectrum(im, 8);
  CHECK(std::abs(dense::spectral_norm(a->to_dense()) - 2.0) <= 1e-13);

  rng::Engine eng(56);
  Vector mixed(10);
  for (Eigen::Index i = 0; i < 10; ++i)
    mixed(i) = cx(std::normal_distribution<double>()(eng), std::normal_distribution<double>()(eng));
  const Matrix m = normal_with_spectrum(mixed, 9)->to_dense();
  const double scale = dense::spectral_norm(m);
  CHECK((m * m.adjoint() - m.adjoint() * m).norm() <= 1e-12 * scale * scale);
}

TEST_CASE("unitary operators preserve block inner products") {
  rng::Engine eng(57);
  OperatorPtr a = floquet_unitary(random_disk_params(32, eng));
  const Matrix x = rng::gaussian_block(32, 4, eng);
  const Matrix ax = a->apply(x);
  CHECK((ax.adjoint() * ax - x.adjoint() * x).norm() <= 1e-12 * x.squaredNorm());
}

TEST_CASE("seeded constructors are reproducible") {
  Vector phases(6);
  rng::Engine eng(58);
  for (Eigen::Index i = 0; i < 6; ++i) phases(i) = rng::uniform_circle(eng);
  CHECK((unitary_with_spectrum(phases, 500)->to_dense() -
         unitary_with_spectrum(phases, 500)->to_dense()).norm() == 0.0);
}
