#pragma once

#include "ubk/types.hpp"

#include <cstdint>
#include <vector>

namespace ubk {

// Square complex matrix in compressed row storage.
class SparseComplexMatrix {
public:
  SparseComplexMatrix() = default;

  struct Triplet {
    Eigen::Index row;
    Eigen::Index col;
    cx value;
  };

  static SparseComplexMatrix from_triplets(Eigen::Index n, std::vector<Triplet> entries);

  Eigen::Index dim() const { return n_; }
  Eigen::Index nnz() const { return static_cast<Eigen::Index>(values_.size()); }

  const std::vector<Eigen::Index>& row_offsets() const { return row_offsets_; }
  const std::vector<Eigen::Index>& col_indices() const { return col_indices_; }
  const std::vector<cx>& values() const { return values_; }

  // y = A x for a block vector x (n x s); rows are independent, so the
  // parallel loop is deterministic.
  Matrix apply(const Matrix& x) const;

  SparseComplexMatrix adjoint() const;
  SparseComplexMatrix multiply(const SparseComplexMatrix& other) const;
  Matrix to_dense() const;

private:
  Eigen::Index n_ = 0;
  std::vector<Eigen::Index> row_offsets_;
  std::vector<Eigen::Index> col_indices_;
  std::vector<cx> values_;
};

} // namespace ubk
