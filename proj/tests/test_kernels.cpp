#include "ubk/kernels.hpp"
#include "ubk/rng.hpp"

#include <doctest.h>

using namespace ubk;

TEST_CASE("inner_product matches the dense product and the serial reference") {
  rng::Engine eng(11);
  for (Eigen::Index n :
       {Eigen::Index(7), Eigen::Index(100), kernels::kChunkRows + 5, 3 * kernels::kChunkRows}) {
    const Matrix x = rng::gaussian_block(n, 3, eng);
    const Matrix y = rng::gaussian_block(n, 2, eng);
    const Matrix want = x.adjoint() * y;
    CHECK((kernels::inner_product(x, y) - want).norm() <= 1e-12 * want.norm());
    CHECK((kernels::serial::inner_product(x, y) - want).norm() <= 1e-12 * want.norm());
  }
}

TEST_CASE("inner_product is deterministic run to run") {
  rng::Engine eng(12);
  const Matrix x = rng::gaussian_block(2 * kernels::kChunkRows + 17, 4, eng);
  const Matrix y = rng::gaussian_block(2 * kernels::kChunkRows + 17, 4, eng);
  const Matrix a = kernels::inner_product(x, y);
  const Matrix b = kernels::inner_product(x, y);
  CHECK((a - b).norm() == 0.0);  // bitwise: chunk combination order is fixed
}

TEST_CASE("add_product accumulates y += scale * x * c") {
  rng::Engine eng(13);
  const Eigen::Index n = kernels::kChunkRows + 100;
  const Matrix x = rng::gaussian_block(n, 3, eng);
  const Matrix c = rng::gaussian_block(3, 2, eng);
  const Matrix y0 = rng::gaussian_block(n, 2, eng);

  Matrix y = y0;
  kernels::add_product(y, x, c, cx(-2.0, 0.5));
  const Matrix want = y0 + cx(-2.0, 0.5) * x * c;
  CHECK((y - want).norm() <= 1e-12 * want.norm());

  Matrix ys = y0;
  kernels::serial::add_product(ys, x, c, cx(-2.0, 0.5));
  CHECK((ys - want).norm() <= 1e-12 * want.norm());
}

TEST_CASE("right_multiply matches the dense product") {
  rng::Engine eng(14);
  const Matrix x = rng::gaussian_block(500, 4, eng);
  const Matrix c = rng::gaussian_block(4, 4, eng);
  const Matrix want = x * c;
  CHECK((kernels::right_multiply(x, c) - want).norm() <= 1e-12 * want.norm());
  CHECK((kernels::serial::right_multiply(x, c) - want).norm() <= 1e-12 * want.norm());
}
