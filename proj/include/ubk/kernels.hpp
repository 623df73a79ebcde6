#pragma once

#include "ubk/types.hpp"

namespace ubk::kernels {

// Row-chunked kernels for tall block vectors (n x s with s << n). The
// parallel versions split the rows into chunks of kChunkRows and combine
// partial results in chunk order, so the output is independent of the
// number of threads.
inline constexpr Eigen::Index kChunkRows = 2048;

// X^* Y for X (n x s), Y (n x t); returns s x t.
Matrix inner_product(const Matrix& x, const Matrix& y);

// y += scale * x * c for x (n x s), c (s x t), y (n x t).
void add_product(Matrix& y, const Matrix& x, const Matrix& c, cx scale = cx(1.0));

// y = x * c.
Matrix right_multiply(const Matrix& x, const Matrix& c);

namespace serial {

// Plain-loop reference implementations, kept for testing and benchmarks.
Matrix inner_product(const Matrix& x, const Matrix& y);
void add_product(Matrix& y, const Matrix& x, const Matrix& c, cx scale = cx(1.0));
Matrix right_multiply(const Matrix& x, const Matrix& c);

} // namespace serial

} // namespace ubk::kernels
