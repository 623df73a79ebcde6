#pragma once

#include <complex>
#include <Eigen/Dense>

namespace ubk {

using cx = std::complex<double>;

// All dense storage is column-major (Eigen default); the whole library
// relies on this single convention.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kEps = 2.220446049250313e-16;

} // namespace ubk
