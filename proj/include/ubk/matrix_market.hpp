#pragma once

#include "ubk/sparse.hpp"
#include "ubk/types.hpp"

#include <string>

namespace ubk::mm {

// Matrix Market exchange format, complex field, general symmetry.
//
// Sparse matrices use the "coordinate" format:
//   %%MatrixMarket matrix coordinate complex general
//   n n nnz
//   row col re im        (1-based indices)
// Dense matrices use the "array" format:
//   %%MatrixMarket matrix array complex general
//   n n
//   re im                (column-major)
// Values are written with 17 significant digits so a write/read round trip
// is exact.

void write_sparse(const std::string& path, const SparseComplexMatrix& a);
SparseComplexMatrix read_sparse(const std::string& path);

void write_dense(const std::string& path, const Matrix& a);
Matrix read_dense(const std::string& path);

// Reads either format into dense storage.
Matrix read_any_dense(const std::string& path);
bool is_coordinate_file(const std::string& path);

} // namespace ubk::mm
