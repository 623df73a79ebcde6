#include "ubk/kernels.hpp"

#include "ubk/errors.hpp"

#include <omp.h>
#include <vector>

namespace ubk::kernels {

namespace {

Eigen::Index chunk_count(Eigen::Index n) {
  return (n + kChunkRows - 1) / kChunkRows;
}

} // namespace

Matrix inner_product(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows())
    throw DimensionMismatch("inner_product: row counts differ");
  const Eigen::Index n = x.rows();
  const Eigen::Index nc = chunk_count(n);
  std::vector<Matrix> partial(static_cast<size_t>(nc));
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < nc; ++c) {
    const Eigen::Index lo = c * kChunkRows;
    const Eigen::Index len = std::min(kChunkRows, n - lo);
    partial[static_cast<size_t>(c)].noalias() =
        x.middleRows(lo, len).adjoint() * y.middleRows(lo, len);
  }
  Matrix out = Matrix::Zero(x.cols(), y.cols());
  for (auto& p : partial) out += p;
  return out;
}

void add_product(Matrix& y, const Matrix& x, const Matrix& c, cx scale) {
  if (x.rows() != y.rows() || x.cols() != c.rows() || c.cols() != y.cols())
    throw DimensionMismatch("add_product: shape mismatch");
  const Eigen::Index n = x.rows();
  const Eigen::Index nc = chunk_count(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index ch = 0; ch < nc; ++ch) {
    const Eigen::Index lo = ch * kChunkRows;
    const Eigen::Index len = std::min(kChunkRows, n - lo);
    y.middleRows(lo, len).noalias() += scale * (x.middleRows(lo, len) * c);
  }
}

Matrix right_multiply(const Matrix& x, const Matrix& c) {
  Matrix y = Matrix::Zero(x.rows(), c.cols());
  add_product(y, x, c);
  return y;
}

namespace serial {

Matrix inner_product(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows())
    throw DimensionMismatch("inner_product: row counts differ");
  Matrix out = Matrix::Zero(x.cols(), y.cols());
  for (Eigen::Index j = 0; j < y.cols(); ++j)
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      cx acc(0.0);
      for (Eigen::Index r = 0; r < x.rows(); ++r)
        acc += std::conj(x(r, i)) * y(r, j);
      out(i, j) = acc;
    }
  return out;
}

void add_product(Matrix& y, const Matrix& x, const Matrix& c, cx scale) {
  if (x.rows() != y.rows() || x.cols() != c.rows() || c.cols() != y.cols())
    throw DimensionMismatch("add_product: shape mismatch");
  for (Eigen::Index j = 0; j < y.cols(); ++j)
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
      const cx f = scale * c(k, j);
      for (Eigen::Index r = 0; r < x.rows(); ++r)
        y(r, j) += f * x(r, k);
    }
}

Matrix right_multiply(const Matrix& x, const Matrix& c) {
  Matrix y = Matrix::Zero(x.rows(), c.cols());
  add_product(y, x, c);
  return y;
}

} // namespace serial

} // namespace ubk::kernels
