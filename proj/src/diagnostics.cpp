#include "ubk/diagnostics.hpp"

#include "ubk/dense.hpp"
#include "ubk/errors.hpp"
#include "ubk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ubk {

namespace {

std::vector<cx> sorted_by_phase(std::vector<cx> v) {
  std::sort(v.begin(), v.end(), [](const cx& a, const cx& b) {
    const double pa = std::arg(a), pb = std::arg(b);
    if (pa != pb) return pa < pb;
    return std::abs(a) < std::abs(b);
  });
  return v;
}

// Smallest threshold t such that the bipartite graph with edges
// |lhs_i - rhs_j| <= t has a perfect matching (bottleneck assignment).
double bottleneck_gap(const std::vector<cx>& lhs, const std::vector<cx>& rhs) {
  const size_t n = lhs.size();
  std::vector<double> dist(n * n);
  std::vector<double> thresholds;
  thresholds.reserve(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      dist[i * n + j] = std::abs(lhs[i] - rhs[j]);
      thresholds.push_back(dist[i * n + j]);
    }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  auto has_perfect_matching = [&](double t) {
    std::vector<int> match(n, -1);
    std::vector<char> used(n);
    std::function<bool(size_t)> augment = [&](size_t i) -> bool {
      for (size_t j = 0; j < n; ++j) {
        if (used[j] || dist[i * n + j] > t) continue;
        used[j] = 1;
        if (match[j] < 0 || augment(static_cast<size_t>(match[j]))) {
          match[j] = static_cast<int>(i);
          return true;
        }
      }
      return false;
    };
    for (size_t i = 0; i < n; ++i) {
      std::fill(used.begin(), used.end(), 0);
      if (!augment(i)) return false;
    }
    return true;
  };

  size_t lo = 0, hi = thresholds.size() - 1;
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (has_perfect_matching(thresholds[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return thresholds[lo];
}

} // namespace

Matrix gram_matrix(const BlockBasis& basis) {
  const Eigen::Index m = basis.size();
  const Eigen::Index s = basis.block_size;
  if (m == 0) throw InvalidParameter("gram_matrix: empty basis");
  Matrix g(m * s, m * s);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j) {
      Matrix gij = kernels::inner_product(basis.blocks[static_cast<size_t>(i)],
                                          basis.blocks[static_cast<size_t>(j)]);
      g.block(i * s, j * s, s, s) = gij;
      if (j > i) g.block(j * s, i * s, s, s) = gij.adjoint();
    }
  return g;
}

Matrix projection_matrix(const LinearOperator& a, const BlockBasis& basis) {
  const Eigen::Index m = basis.size();
  const Eigen::Index s = basis.block_size;
  if (m == 0) throw InvalidParameter("projection_matrix: empty basis");
  Matrix p(m * s, m * s);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Matrix y = a.apply(basis.blocks[static_cast<size_t>(j)]);
    for (Eigen::Index i = 0; i < m; ++i)
      p.block(i * s, j * s, s, s) =
          kernels::inner_product(basis.blocks[static_cast<size_t>(i)], y);
  }
  return p;
}

double orthogonality_error(const BlockBasis& basis) {
  const Matrix g = gram_matrix(basis);
  return (g - Matrix::Identity(g.rows(), g.cols())).norm();
}

double projection_error(const LinearOperator& a, const BlockBasis& basis, const Matrix& t) {
  if (t.rows() != basis.size() * basis.block_size || t.cols() != t.rows())
    throw DimensionMismatch("projection_error: matrix size does not match the basis");
  return (projection_matrix(a, basis) - t).norm();
}

double projection_error(const LinearOperator& a, const BlockBasis& basis,
                        const BlockHessenberg& t) {
  return projection_error(a, basis, t.to_dense());
}

double projection_error(const LinearOperator& a, const BlockBasis& basis,
                        const CMVStructure& t) {
  return projection_error(a, basis, t.to_dense());
}

std::vector<double> ritz_distances(const Matrix& t, cx target, Eigen::Index j_max) {
  if (j_max < 1 || j_max > t.rows())
    throw InvalidParameter("ritz_distances: j_max out of range");
  std::vector<cx> theta = dense::dense_eigenvalues(t);
  std::vector<double> d(theta.size());
  std::transform(theta.begin(), theta.end(), d.begin(),
                 [&](const cx& th) { return std::abs(th - target); });
  std::sort(d.begin(), d.end());
  d.resize(static_cast<size_t>(j_max));
  return d;
}

double eigenvalue_matching_gap(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.rows() != lhs.cols() || rhs.rows() != rhs.cols())
    throw DimensionMismatch("eigenvalue_matching_gap: same-size square matrices required");
  const std::vector<cx> el = sorted_by_phase(dense::dense_eigenvalues(lhs));
  const std::vector<cx> er = sorted_by_phase(dense::dense_eigenvalues(rhs));

  double greedy = 0.0;
  bool ambiguous = false;
  for (size_t i = 0; i < el.size(); ++i) {
    greedy = std::max(greedy, std::abs(el[i] - er[i]));
    if (i + 1 < el.size() && std::abs(el[i + 1] - el[i]) < 1e-6) ambiguous = true;
  }
  if (!ambiguous && greedy <= 1e-10) return greedy;
  return std::min(greedy, bottleneck_gap(el, er));
}

double similarity_check(const BlockHessenberg& h, const CMVStructure& c) {
  return eigenvalue_matching_gap(h.to_dense(), c.to_dense());
}

bool VerblunskyReport::ok(double norm_cap, double residual_cap) const {
  for (double v : norms)
    if (!(v < norm_cap)) return false;
  for (double v : rho_r_residuals)
    if (!(v <= residual_cap)) return false;
  for (double v : rho_l_residuals)
    if (!(v <= residual_cap)) return false;
  return true;
}

VerblunskyReport verify_verblunsky(const VerblunskySequence& alphas) {
  VerblunskyReport rep;
  const Eigen::Index s = alphas.block_size();
  const Matrix eye = Matrix::Identity(s, s);
  for (Eigen::Index k = 1; k <= alphas.size(); ++k) {
    const Matrix& a = alphas.alpha(k);
    const Matrix gram_r = eye - a * a.adjoint();
    rep.norms.push_back(alphas.alpha_norm(k));
    rep.rho_r_residuals.push_back((alphas.rho_r(k) * alphas.rho_r(k) - gram_r).norm());
    rep.rho_l_residuals.push_back(
        (alphas.rho_l(k) * alphas.rho_l(k) - (eye - a.adjoint() * a)).norm());
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram_r);
    rep.min_gram_eigenvalues.push_back(es.eigenvalues().minCoeff());
  }
  return rep;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(16);
  os << v;
  return os.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("CsvTable::write: cannot open " + path);
  for (size_t i = 0; i < columns.size(); ++i)
    out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw InvalidParameter("CsvTable::write: row width does not match the header");
    for (size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
  if (!out) throw Error("CsvTable::write: write failed for " + path);
}

CsvTable experiment_table(const std::vector<ExperimentResult>& results) {
  CsvTable table;
  table.columns.push_back("m");
  std::vector<Eigen::Index> schedule;
  for (const auto& res : results)
    for (const auto& rec : res.records) schedule.push_back(rec.m);
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());
  for (const char* prefix : {"time_", "orth_", "proj_", "applies_", "inner_", "status_"})
    for (const auto& res : results) table.columns.push_back(prefix + res.algorithm);

  for (Eigen::Index m : schedule) {
    std::vector<std::string> row;
    row.push_back(std::to_string(m));
    auto cell = [&](const ExperimentResult& res,
                    auto&& get) -> std::string {
      for (const auto& rec : res.records)
        if (rec.m == m) return get(rec);
      return "nan";
    };
    for (const auto& res : results)
      row.push_back(cell(res, [](const ExperimentRecord& x) { return format_double(x.wall_time_s); }));
    for (const auto& res : results)
      row.push_back(cell(res, [](const ExperimentRecord& x) { return format_double(x.eps_orth); }));
    for (const auto& res : results)
      row.push_back(cell(res, [](const ExperimentRecord& x) { return format_double(x.eps_proj); }));
    for (const auto& res : results)
      row.push_back(cell(res, [](const ExperimentRecord& x) {
        return std::to_string(x.operator_applications);
      }));
    for (const auto& res : results)
      row.push_back(cell(res, [](const ExperimentRecord& x) {
        return std::to_string(x.block_inner_products);
      }));
    for (const auto& res : results)
      row.push_back(cell(res, [](const ExperimentRecord& x) { return x.status; }));
    table.rows.push_back(std::move(row));
  }
  return table;
}

} // namespace ubk
