#include "ubk/errors.hpp"
#include "ubk/matrix_market.hpp"
#include "ubk/rng.hpp"
#include "ubk/sparse.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace ubk;

namespace {

SparseComplexMatrix random_sparse(Eigen::Index n, int per_row, rng::Engine& eng) {
  std::vector<SparseComplexMatrix::Triplet> t;
  std::uniform_int_distribution<Eigen::Index> col(0, n - 1);
  std::normal_distribution<double> g;
  for (Eigen::Index i = 0; i < n; ++i)
    for (int k = 0; k < per_row; ++k) t.push_back({i, col(eng), cx(g(eng), g(eng))});
  return SparseComplexMatrix::from_triplets(n, std::move(t));
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("from_triplets sorts and merges duplicates") {
  std::vector<SparseComplexMatrix::Triplet> t{
      {1, 1, cx(2.0)}, {0, 0, cx(1.0)}, {1, 1, cx(3.0)}, {0, 1, cx(-1.0)}};
  const SparseComplexMatrix a = SparseComplexMatrix::from_triplets(2, std::move(t));
  CHECK(a.nnz() == 3);  // the (1,1) entries merged
  const Matrix d = a.to_dense();
  CHECK(std::abs(d(1, 1) - cx(5.0)) <= 1e-15);
  CHECK(std::abs(d(0, 1) - cx(-1.0)) <= 1e-15);
}

TEST_CASE("from_triplets validates entries") {
  CHECK_THROWS_AS(
      (void)SparseComplexMatrix::from_triplets(2, {{2, 0, cx(1.0)}}), InvalidParameter);
  CHECK_THROWS_AS((void)SparseComplexMatrix::from_triplets(
                      2, {{0, 0, cx(std::nan(""), 0.0)}}),
                  InvalidParameter);
}

TEST_CASE("sparse apply, adjoint, multiply match the dense oracle") {
  rng::Engine eng(41);
  const SparseComplexMatrix a = random_sparse(5, 3, eng);
  const SparseComplexMatrix b = random_sparse(5, 2, eng);
  const Matrix ad = a.to_dense();
  const Matrix bd = b.to_dense();
  const Matrix x = rng::gaussian_block(5, 3, eng);

  CHECK((a.apply(x) - ad * x).norm() <= 1e-13 * (ad * x).norm());
  CHECK((a.adjoint().to_dense() - ad.adjoint()).norm() <= 1e-15);
  CHECK((a.multiply(b).to_dense() - ad * bd).norm() <= 1e-13 * (ad * bd).norm());
}

TEST_CASE("matrix market sparse round trip is exact") {
  rng::Engine eng(42);
  const SparseComplexMatrix a = random_sparse(7, 2, eng);
  const std::string path = temp_file("ubk_test_sparse.mtx");
  mm::write_sparse(path, a);
  CHECK(mm::is_coordinate_file(path));
  const SparseComplexMatrix back = mm::read_sparse(path);
  CHECK(back.dim() == a.dim());
  CHECK((back.to_dense() - a.to_dense()).norm() == 0.0);  // 17-digit output round trips exactly
  std::filesystem::remove(path);
}

TEST_CASE("matrix market dense round trip is exact") {
  rng::Engine eng(43);
  const Matrix a = rng::gaussian_block(6, 6, eng);
  const std::string path = temp_file("ubk_test_dense.mtx");
  mm::write_dense(path, a);
  CHECK(!mm::is_coordinate_file(path));
  CHECK((mm::read_dense(path) - a).norm() == 0.0);
  CHECK((mm::read_any_dense(path) - a).norm() == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("read_any_dense reads coordinate files too") {
  rng::Engine eng(44);
  const SparseComplexMatrix a = random_sparse(5, 2, eng);
  const std::string path = temp_file("ubk_test_any.mtx");
  mm::write_sparse(path, a);
  CHECK((mm::read_any_dense(path) - a.to_dense()).norm() <= 1e-15);
  std::filesystem::remove(path);
}

TEST_CASE("malformed matrix market input is rejected") {
  const std::string path = temp_file("ubk_test_bad.mtx");
  std::ofstream(path) << "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 2.0\n";
  CHECK_THROWS_AS((void)mm::read_sparse(path), Error);
  std::filesystem::remove(path);
}
