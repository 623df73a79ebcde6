// Compares the OpenMP block kernels against their serial references:
// correctness (bitwise-comparable up to roundoff) and throughput.

#include "ubk/kernels.hpp"
#include "ubk/rng.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

namespace {

using namespace ubk;

double time_of(int reps, auto&& fn) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
         reps;
}

} // namespace

int main(int argc, char** argv) {
  Eigen::Index n = 200000, s = 10;
  int reps = 20;
  if (argc > 1) n = std::atoll(argv[1]);
  if (argc > 2) s = std::atoll(argv[2]);
  if (argc > 3) reps = std::atoi(argv[3]);

  rng::Engine eng(123);
  const Matrix x = rng::gaussian_block(n, s, eng);
  const Matrix y = rng::gaussian_block(n, s, eng);
  const Matrix c = rng::gaussian_block(s, s, eng);

  std::printf("n = %lld, s = %lld, reps = %d, omp threads = %d\n",
              static_cast<long long>(n), static_cast<long long>(s), reps,
              omp_get_max_threads());

  {
    const Matrix gp = kernels::inner_product(x, y);
    const Matrix gs = kernels::serial::inner_product(x, y);
    const double tp = time_of(reps, [&] { volatile auto r = kernels::inner_product(x, y).norm(); (void)r; });
    const double ts = time_of(reps, [&] { volatile auto r = kernels::serial::inner_product(x, y).norm(); (void)r; });
    std::printf("inner_product   parallel %.4f ms  serial %.4f ms  speedup %.2fx  diff %.2e\n",
                tp * 1e3, ts * 1e3, ts / tp, (gp - gs).norm());
  }
  {
    Matrix yp = y, ys = y;
    kernels::add_product(yp, x, c);
    kernels::serial::add_product(ys, x, c);
    const double tp = time_of(reps, [&] { Matrix t = y; kernels::add_product(t, x, c); });
    const double ts = time_of(reps, [&] { Matrix t = y; kernels::serial::add_product(t, x, c); });
    std::printf("add_product     parallel %.4f ms  serial %.4f ms  speedup %.2fx  diff %.2e\n",
                tp * 1e3, ts * 1e3, ts / tp, (yp - ys).norm());
  }
  {
    const Matrix rp = kernels::right_multiply(x, c);
    const Matrix rs = kernels::serial::right_multiply(x, c);
    const double tp = time_of(reps, [&] { volatile auto r = kernels::right_multiply(x, c).norm(); (void)r; });
    const double ts = time_of(reps, [&] { volatile auto r = kernels::serial::right_multiply(x, c).norm(); (void)r; });
    std::printf("right_multiply  parallel %.4f ms  serial %.4f ms  speedup %.2fx  diff %.2e\n",
                tp * 1e3, ts * 1e3, ts / tp, (rp - rs).norm());
  }
  return 0;
}
