#include "ubk/sparse.hpp"

#include "ubk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ubk {

SparseComplexMatrix SparseComplexMatrix::from_triplets(Eigen::Index n,
                                                       std::vector<Triplet> entries) {
  SparseComplexMatrix m;
  m.n_ = n;
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw InvalidParameter("SparseComplexMatrix: index out of range");
    if (!std::isfinite(t.value.real()) || !std::isfinite(t.value.imag()))
      throw InvalidParameter("SparseComplexMatrix: nonfinite entry");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  m.row_offsets_.assign(static_cast<size_t>(n) + 1, 0);
  for (size_t i = 0; i < entries.size(); ++i) {
    // Merge duplicates.
    if (!m.values_.empty() && i > 0 && entries[i].row == entries[i - 1].row &&
        entries[i].col == entries[i - 1].col) {
      m.values_.back() += entries[i].value;
      continue;
    }
    m.col_indices_.push_back(entries[i].col);
    m.values_.push_back(entries[i].value);
    ++m.row_offsets_[static_cast<size_t>(entries[i].row) + 1];
  }
  for (size_t r = 1; r < m.row_offsets_.size(); ++r)
    m.row_offsets_[r] += m.row_offsets_[r - 1];
  return m;
}

Matrix SparseComplexMatrix::apply(const Matrix& x) const {
  if (x.rows() != n_)
    throw DimensionMismatch("SparseComplexMatrix::apply: dimension mismatch");
  Matrix y = Matrix::Zero(n_, x.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < n_; ++r) {
    for (Eigen::Index k = row_offsets_[static_cast<size_t>(r)];
         k < row_offsets_[static_cast<size_t>(r) + 1]; ++k) {
      const cx v = values_[static_cast<size_t>(k)];
      const Eigen::Index c = col_indices_[static_cast<size_t>(k)];
      y.row(r) += v * x.row(c);
    }
  }
  return y;
}

SparseComplexMatrix SparseComplexMatrix::adjoint() const {
  std::vector<Triplet> tr;
  tr.reserve(values_.size());
  for (Eigen::Index r = 0; r < n_; ++r)
    for (Eigen::Index k = row_offsets_[static_cast<size_t>(r)];
         k < row_offsets_[static_cast<size_t>(r) + 1]; ++k)
      tr.push_back({col_indices_[static_cast<size_t>(k)], r,
                    std::conj(values_[static_cast<size_t>(k)])});
  return from_triplets(n_, std::move(tr));
}

SparseComplexMatrix SparseComplexMatrix::multiply(const SparseComplexMatrix& other) const {
  if (n_ != other.n_)
    throw DimensionMismatch("SparseComplexMatrix::multiply: dimension mismatch");
  std::vector<Triplet> tr;
  for (Eigen::Index r = 0; r < n_; ++r) {
    std::map<Eigen::Index, cx> row;
    for (Eigen::Index k = row_offsets_[static_cast<size_t>(r)];
         k < row_offsets_[static_cast<size_t>(r) + 1]; ++k) {
      const Eigen::Index mid = col_indices_[static_cast<size_t>(k)];
      const cx v = values_[static_cast<size_t>(k)];
      for (Eigen::Index j = other.row_offsets_[static_cast<size_t>(mid)];
           j < other.row_offsets_[static_cast<size_t>(mid) + 1]; ++j)
        row[other.col_indices_[static_cast<size_t>(j)]] +=
            v * other.values_[static_cast<size_t>(j)];
    }
    for (const auto& [c, v] : row) tr.push_back({r, c, v});
  }
  return from_triplets(n_, std::move(tr));
}

Matrix SparseComplexMatrix::to_dense() const {
  Matrix d = Matrix::Zero(n_, n_);
  for (Eigen::Index r = 0; r < n_; ++r)
    for (Eigen::Index k = row_offsets_[static_cast<size_t>(r)];
         k < row_offsets_[static_cast<size_t>(r) + 1]; ++k)
      d(r, col_indices_[static_cast<size_t>(k)]) += values_[static_cast<size_t>(k)];
  return d;
}

} // namespace ubk
