#include "ubk/rng.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>

namespace ubk::rng {

Matrix gaussian_block(Eigen::Index n, Eigen::Index s, Engine& eng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix x(n, s);
  for (Eigen::Index j = 0; j < s; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = gauss(eng);
      const double im = gauss(eng);
      x(i, j) = cx(re, im);
    }
  return x;
}

Matrix haar_unitary(Eigen::Index n, Engine& eng) {
  Matrix g = gaussian_block(n, n, eng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cx d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : cx(1.0);
  }
  return q;
}

cx uniform_disk(Engine& eng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Inverse-CDF sampling of the radius; rejects the measure-zero boundary.
  double r = std::sqrt(unit(eng));
  while (r >= 1.0) r = std::sqrt(unit(eng));
  const double t = 2.0 * std::numbers::pi * unit(eng);
  return cx(r * std::cos(t), r * std::sin(t));
}

cx uniform_circle(Engine& eng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double t = 2.0 * std::numbers::pi * unit(eng);
  return cx(std::cos(t), std::sin(t));
}

} // namespace ubk::rng
