#include "ubk/krylov.hpp"

#include "ubk/dense.hpp"
#include "ubk/errors.hpp"
#include "ubk/kernels.hpp"

#include <Eigen/SVD>

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace ubk {

namespace {

// Normalizes the start block: accepted as-is when already orthonormal,
// otherwise replaced by its thin QR factor.
struct StartBlock {
  Matrix v1;
  Matrix factor;
};

StartBlock normalize_start(const LinearOperator& a, const Matrix& b) {
  if (b.rows() != a.dim())
    throw DimensionMismatch("start block rows do not match the operator dimension");
  const Eigen::Index s = b.cols();
  if (s < 1 || s > b.rows())
    throw InvalidStart("start block needs 1 <= s <= n columns");
  const Matrix gram = kernels::inner_product(b, b);
  StartBlock out;
  if ((gram - Matrix::Identity(s, s)).norm() <= 1e-12) {
    out.v1 = b;
    out.factor = Matrix::Identity(s, s);
    return out;
  }
  dense::QrFactors qr = dense::thin_qr_rank_revealing(b);
  if (qr.rank < s)
    throw InvalidStart("start block is numerically rank deficient");
  out.v1 = std::move(qr.q);
  out.factor = std::move(qr.r);
  return out;
}

Eigen::Index count_interior_singular_values(const Matrix& alpha, double eps_defl) {
  Eigen::JacobiSVD<Matrix> svd(alpha);
  const RealVector& sig = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sig.size(); ++i)
    if (sig(i) < 1.0 - eps_defl) ++r;
  return r;
}

// Writes every cutoff block whose coefficients alpha_1..alpha_avail are
// already known; with avail >= m this is the complete cutoff matrix.
CMVStructure assemble_cmv(const VerblunskySequence& alphas, Eigen::Index m) {
  const Eigen::Index avail = alphas.size();
  CMVStructure cmv(m, alphas.block_size());
  if (avail >= 1) {
    cmv.set_block(1, 1, alphas.alpha(1).adjoint());
    if (m >= 2) cmv.set_block(2, 1, alphas.rho_r(1));
  }
  for (Eigen::Index k = 1; 2 * k <= m; ++k) {
    if (avail >= 2 * k) {
      // Blocks of B_{k-1}: rows 2k-1, 2k over columns 2k, 2k+1.
      cmv.set_block(2 * k - 1, 2 * k, alphas.rho_l(2 * k - 1) * alphas.alpha(2 * k).adjoint());
      cmv.set_block(2 * k, 2 * k, -alphas.alpha(2 * k - 1) * alphas.alpha(2 * k).adjoint());
      if (2 * k + 1 <= m) {
        cmv.set_block(2 * k - 1, 2 * k + 1, alphas.rho_l(2 * k - 1) * alphas.rho_l(2 * k));
        cmv.set_block(2 * k, 2 * k + 1, -alphas.alpha(2 * k - 1) * alphas.rho_l(2 * k));
      }
    }
    if (2 * k + 1 <= m && avail >= 2 * k + 1) {
      // Blocks of A_k: rows 2k+1, 2k+2 over columns 2k, 2k+1.
      cmv.set_block(2 * k + 1, 2 * k, alphas.alpha(2 * k + 1).adjoint() * alphas.rho_r(2 * k));
      cmv.set_block(2 * k + 1, 2 * k + 1, -alphas.alpha(2 * k + 1).adjoint() * alphas.alpha(2 * k));
      if (2 * k + 2 <= m) {
        cmv.set_block(2 * k + 2, 2 * k, alphas.rho_r(2 * k + 1) * alphas.rho_r(2 * k));
        cmv.set_block(2 * k + 2, 2 * k + 1, -alphas.rho_r(2 * k + 1) * alphas.alpha(2 * k));
      }
    }
  }
  return cmv;
}

} // namespace

Matrix BlockBasis::to_matrix() const {
  Matrix out(rows, size() * block_size);
  for (Eigen::Index j = 0; j < size(); ++j)
    out.middleCols(j * block_size, block_size) = blocks[static_cast<size_t>(j)];
  return out;
}

BlockHessenberg::BlockHessenberg(Eigen::Index m, Eigen::Index s) : m_(m), s_(s) {
  if (m < 1 || s < 1)
    throw InvalidParameter("BlockHessenberg: order and block size must be positive");
  cols_.reserve(static_cast<size_t>(m));
}

void BlockHessenberg::push_column(std::vector<Matrix> blocks) {
  const Eigen::Index k = columns_set() + 1;
  if (k > m_) throw InvalidParameter("BlockHessenberg: too many columns");
  const auto len = static_cast<Eigen::Index>(blocks.size());
  if (len < k || len > std::min(k + 1, m_))
    throw InvalidParameter("BlockHessenberg: column has the wrong number of blocks");
  for (const Matrix& blk : blocks)
    if (blk.rows() != s_ || blk.cols() != s_)
      throw DimensionMismatch("BlockHessenberg: block has the wrong size");
  cols_.push_back(std::move(blocks));
}

bool BlockHessenberg::has_block(Eigen::Index h, Eigen::Index k) const {
  if (k < 1 || k > columns_set() || h < 1) return false;
  return h <= static_cast<Eigen::Index>(cols_[static_cast<size_t>(k - 1)].size());
}

const Matrix& BlockHessenberg::block(Eigen::Index h, Eigen::Index k) const {
  if (!has_block(h, k))
    throw InvalidParameter("BlockHessenberg: block index out of range");
  return cols_[static_cast<size_t>(k - 1)][static_cast<size_t>(h - 1)];
}

Matrix BlockHessenberg::to_dense() const {
  const Eigen::Index mset = columns_set();
  Matrix out = Matrix::Zero(mset * s_, mset * s_);
  for (Eigen::Index k = 1; k <= mset; ++k) {
    const auto& col = cols_[static_cast<size_t>(k - 1)];
    const Eigen::Index rows = std::min<Eigen::Index>(static_cast<Eigen::Index>(col.size()), mset);
    for (Eigen::Index h = 1; h <= rows; ++h)
      out.block((h - 1) * s_, (k - 1) * s_, s_, s_) = col[static_cast<size_t>(h - 1)];
  }
  return out;
}

CMVStructure::CMVStructure(Eigen::Index m, Eigen::Index s) : m_(m), s_(s) {
  if (m < 1 || s < 1)
    throw InvalidParameter("CMVStructure: order and block size must be positive");
  dense_ = Matrix::Zero(m * s, m * s);
}

bool CMVStructure::in_pattern(Eigen::Index i, Eigen::Index j) {
  if (i < 1 || j < 1) return false;
  if (j == 1) return i <= 2;
  if (j % 2 == 0) return i >= j - 1 && i <= j + 2;
  return i >= j - 2 && i <= j + 1;
}

Matrix CMVStructure::block(Eigen::Index i, Eigen::Index j) const {
  if (i < 1 || i > m_ || j < 1 || j > m_)
    throw InvalidParameter("CMVStructure: block index out of range");
  return dense_.block((i - 1) * s_, (j - 1) * s_, s_, s_);
}

void CMVStructure::set_block(Eigen::Index i, Eigen::Index j, const Matrix& value) {
  if (i < 1 || i > m_ || j < 1 || j > m_)
    throw InvalidParameter("CMVStructure: block index out of range");
  if (!in_pattern(i, j))
    throw InvalidParameter("CMVStructure: block outside the sparsity pattern");
  if (value.rows() != s_ || value.cols() != s_)
    throw DimensionMismatch("CMVStructure: block has the wrong size");
  dense_.block((i - 1) * s_, (j - 1) * s_, s_, s_) = value;
}

ArnoldiResult block_arnoldi(const LinearOperator& a, const Matrix& b, Eigen::Index m,
                            double tol, bool finalize) {
  if (m < 1) throw InvalidParameter("block_arnoldi: m must be positive");
  StartBlock start = normalize_start(a, b);
  const Eigen::Index s = b.cols();

  ArnoldiResult res{BlockBasis{a.dim(), s, SpaceKind::Polynomial, {}},
                    BlockHessenberg(m, s), std::nullopt, Counters{}, start.factor};
  res.basis.blocks.push_back(std::move(start.v1));

  for (Eigen::Index k = 1; k < m; ++k) {
    Matrix x = a.apply(res.basis.blocks[static_cast<size_t>(k - 1)]);
    ++res.counters.operator_applications;
    const double x_scale = x.norm();
    std::vector<Matrix> col;
    col.reserve(static_cast<size_t>(k + 1));
    for (Eigen::Index h = 1; h <= k; ++h) {
      const Matrix& vh = res.basis.blocks[static_cast<size_t>(h - 1)];
      Matrix hk = kernels::inner_product(vh, x);
      ++res.counters.block_inner_products;
      kernels::add_product(x, vh, hk, cx(-1.0));
      col.push_back(std::move(hk));
    }
    dense::QrFactors qr = dense::thin_qr_rank_revealing(x, tol, x_scale);
    ++res.counters.block_inner_products;  // normalization counted as one product
    if (qr.rank < s) {
      DeflationReport rep;
      rep.step = k;
      rep.rank = qr.rank;
      rep.residual_norm = x.norm();
      rep.retained_rows = a.dim();
      rep.retained_cols = qr.rank;
      rep.reduced_q = std::move(qr.q);
      rep.reduced_r = std::move(qr.r);
      res.hess.push_column(std::move(col));
      res.deflation = std::move(rep);
      return res;
    }
    col.push_back(qr.r);
    res.hess.push_column(std::move(col));
    res.basis.blocks.push_back(std::move(qr.q));
  }

  if (finalize) {
    Matrix x = a.apply(res.basis.blocks[static_cast<size_t>(m - 1)]);
    ++res.counters.finalize_applications;
    std::vector<Matrix> col;
    col.reserve(static_cast<size_t>(m));
    for (Eigen::Index h = 1; h <= m; ++h) {
      col.push_back(kernels::inner_product(res.basis.blocks[static_cast<size_t>(h - 1)], x));
      ++res.counters.finalize_inner_products;
    }
    res.hess.push_column(std::move(col));
  }
  return res;
}

IsometricResult block_isometric_arnoldi(const LinearOperator& a, const Matrix& b,
                                        Eigen::Index m, double eps_defl) {
  if (m < 1) throw InvalidParameter("block_isometric_arnoldi: m must be positive");
  if (!a.is_unitary())
    throw InvalidParameter("block_isometric_arnoldi: operator must be unitary");
  StartBlock start = normalize_start(a, b);
  const Eigen::Index s = b.cols();

  IsometricResult res{BlockBasis{a.dim(), s, SpaceKind::Polynomial, {}},
                      BlockBasis{a.dim(), s, SpaceKind::Polynomial, {}},
                      VerblunskySequence(s), std::nullopt, Counters{}, start.factor};
  res.basis.blocks.push_back(start.v1);
  res.aux.blocks.push_back(std::move(start.v1));

  for (Eigen::Index k = 1; k < m; ++k) {
    const Matrix& vk = res.basis.blocks[static_cast<size_t>(k - 1)];
    const Matrix& wk = res.aux.blocks[static_cast<size_t>(k - 1)];
    Matrix x = a.apply(vk);
    ++res.counters.operator_applications;
    Matrix alpha = kernels::inner_product(x, wk);
    ++res.counters.block_inner_products;
    if (dense::spectral_norm(alpha) >= 1.0 - eps_defl) {
      Matrix y = x;
      kernels::add_product(y, wk, alpha.adjoint(), cx(-1.0));
      DeflationReport rep;
      rep.step = k;
      rep.rank = count_interior_singular_values(alpha, eps_defl);
      rep.residual_norm = y.norm();
      rep.retained_rows = a.dim();
      rep.retained_cols = rep.rank;
      res.deflation = std::move(rep);
      return res;
    }
    res.alphas.append(alpha);
    Matrix y = x;
    kernels::add_product(y, wk, alpha.adjoint(), cx(-1.0));
    Matrix yt = wk;
    kernels::add_product(yt, x, alpha, cx(-1.0));
    res.basis.blocks.push_back(dense::right_solve_hpd(y, res.alphas.rho_r(k)));
    res.aux.blocks.push_back(dense::right_solve_hpd(yt, res.alphas.rho_l(k)));
  }
  return res;
}

void finalize_alpha_m(const LinearOperator& a, IsometricResult& result) {
  if (result.deflation)
    throw InvalidParameter("finalize_alpha_m: recurrence stopped at a deflation");
  const Eigen::Index mdone = result.basis.size();
  if (result.alphas.size() != mdone - 1)
    throw InvalidParameter("finalize_alpha_m: coefficient already recovered");
  Matrix x = a.apply(result.basis.blocks[static_cast<size_t>(mdone - 1)]);
  ++result.counters.finalize_applications;
  Matrix alpha = kernels::inner_product(x, result.aux.blocks[static_cast<size_t>(mdone - 1)]);
  ++result.counters.finalize_inner_products;
  result.alphas.append(alpha, /*allow_boundary=*/true);
}

BlockHessenberg hessenberg_from_schur(const VerblunskySequence& alphas, Eigen::Index m) {
  if (m < 1 || alphas.size() < m)
    throw InvalidParameter("hessenberg_from_schur: need alpha_1..alpha_m");
  const Eigen::Index s = alphas.block_size();
  BlockHessenberg hess(m, s);
  for (Eigen::Index k = 1; k <= m; ++k) {
    std::vector<Matrix> col(static_cast<size_t>(std::min(k + 1, m)));
    Matrix t = alphas.alpha(k).adjoint();
    for (Eigen::Index h = k; h >= 2; --h) {
      col[static_cast<size_t>(h - 1)] = -alphas.alpha(h - 1) * t;
      t = alphas.rho_l(h - 1) * t;
    }
    col[0] = t;
    if (k < m) col[static_cast<size_t>(k)] = alphas.rho_r(k);
    hess.push_column(std::move(col));
  }
  return hess;
}

SchurFactors schur_factorization(const VerblunskySequence& alphas, Eigen::Index m) {
  if (m < 1 || alphas.size() < m)
    throw InvalidParameter("schur_factorization: need alpha_1..alpha_m");
  const Eigen::Index s = alphas.block_size();
  const Eigen::Index dim = m * s;
  SchurFactors out;
  out.factors.reserve(static_cast<size_t>(m - 1));
  for (Eigen::Index k = 1; k < m; ++k) {
    Matrix g = Matrix::Identity(dim, dim);
    const Eigen::Index off = (k - 1) * s;
    g.block(off, off, s, s) = alphas.alpha(k).adjoint();
    g.block(off, off + s, s, s) = alphas.rho_l(k);
    g.block(off + s, off, s, s) = alphas.rho_r(k);
    g.block(off + s, off + s, s, s) = -alphas.alpha(k);
    out.factors.push_back(std::move(g));
  }
  out.final_factor = Matrix::Identity(dim, dim);
  out.final_factor.bottomRightCorner(s, s) = alphas.alpha(m).adjoint();
  return out;
}

Matrix SchurFactors::product() const {
  Matrix out = final_factor;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) out = *it * out;
  return out;
}

CMVStructure cmv_cutoff(const VerblunskySequence& alphas, Eigen::Index m) {
  if (m < 1 || alphas.size() < m)
    throw InvalidParameter("cmv_cutoff: need alpha_1..alpha_m");
  return assemble_cmv(alphas, m);
}

CmvResult block_cmv_arnoldi(const LinearOperator& a, const Matrix& b, Eigen::Index m,
                            double eps_defl) {
  if (m < 1) throw InvalidParameter("block_cmv_arnoldi: m must be positive");
  if (!a.is_unitary())
    throw InvalidParameter("block_cmv_arnoldi: operator must be unitary");
  StartBlock start = normalize_start(a, b);
  const Eigen::Index s = b.cols();

  CmvResult res{BlockBasis{a.dim(), s, SpaceKind::Extended, {}}, VerblunskySequence(s),
                CMVStructure{}, false, std::nullopt, Counters{}, start.factor};
  res.basis.blocks.push_back(std::move(start.v1));
  auto& w = res.basis.blocks;
  auto& alphas = res.alphas;
  // Projection blocks C_{i,j} formed so far, keyed by 1-based block indices.
  std::map<std::pair<Eigen::Index, Eigen::Index>, Matrix> c;

  auto stop = [&](Eigen::Index step, const Matrix& alpha, const Matrix& residual) {
    DeflationReport rep;
    rep.step = step;
    rep.rank = count_interior_singular_values(alpha, eps_defl);
    rep.residual_norm = residual.norm();
    rep.retained_rows = a.dim();
    rep.retained_cols = rep.rank;
    res.deflation = std::move(rep);
    res.cmv = assemble_cmv(alphas, res.basis.size());
    return res;
  };

  if (m >= 2) {
    Matrix x = a.apply(w[0]);
    ++res.counters.operator_applications;
    Matrix c11 = kernels::inner_product(w[0], x);
    ++res.counters.block_inner_products;
    Matrix alpha1 = c11.adjoint();
    if (dense::spectral_norm(alpha1) >= 1.0 - eps_defl) {
      Matrix y = x;
      kernels::add_product(y, w[0], c11, cx(-1.0));
      return stop(1, alpha1, y);
    }
    alphas.append(alpha1);
    c[{1, 1}] = c11;
    c[{2, 1}] = alphas.rho_r(1);
    Matrix y = x;
    kernels::add_product(y, w[0], c11, cx(-1.0));
    w.push_back(dense::right_solve_hpd(y, alphas.rho_r(1)));
  }

  for (Eigen::Index j = 3; j <= m; ++j) {
    if (j % 2 == 1) {
      const Eigen::Index k = (j - 1) / 2;  // produces W_{2k+1}
      Matrix x = a.apply_adjoint(w[static_cast<size_t>(2 * k - 2)]);
      ++res.counters.operator_applications;
      Matrix c_up = kernels::inner_product(x, w[static_cast<size_t>(2 * k - 1)]);  // C_{2k-1,2k}
      ++res.counters.block_inner_products;
      Matrix alpha = dense::left_solve_hpd(alphas.rho_l(2 * k - 1), c_up).adjoint();
      Matrix y = x;
      if (k >= 2)
        kernels::add_product(y, w[static_cast<size_t>(2 * k - 3)],
                             c.at({2 * k - 1, 2 * k - 2}).adjoint(), cx(-1.0));
      kernels::add_product(y, w[static_cast<size_t>(2 * k - 2)],
                           c.at({2 * k - 1, 2 * k - 1}).adjoint(), cx(-1.0));
      kernels::add_product(y, w[static_cast<size_t>(2 * k - 1)], c_up.adjoint(), cx(-1.0));
      if (dense::spectral_norm(alpha) >= 1.0 - eps_defl) return stop(j - 1, alpha, y);
      alphas.append(alpha);
      c[{2 * k - 1, 2 * k}] = std::move(c_up);
      c[{2 * k - 1, 2 * k + 1}] = alphas.rho_l(2 * k - 1) * alphas.rho_l(2 * k);
      c[{2 * k, 2 * k}] = -alphas.alpha(2 * k - 1) * alphas.alpha(2 * k).adjoint();
      c[{2 * k, 2 * k + 1}] = -alphas.alpha(2 * k - 1) * alphas.rho_l(2 * k);
      Matrix wnew = dense::right_solve_hpd(y, alphas.rho_l(2 * k - 1));
      w.push_back(dense::right_solve_hpd(wnew, alphas.rho_l(2 * k)));
    } else {
      const Eigen::Index k = (j - 2) / 2;  // produces W_{2k+2}
      Matrix x = a.apply(w[static_cast<size_t>(2 * k - 1)]);
      ++res.counters.operator_applications;
      Matrix c_new = kernels::inner_product(w[static_cast<size_t>(2 * k)], x);  // C_{2k+1,2k}
      ++res.counters.block_inner_products;
      Matrix alpha = dense::left_solve_hpd(alphas.rho_r(2 * k), c_new.adjoint());
      Matrix y = x;
      kernels::add_product(y, w[static_cast<size_t>(2 * k - 2)], c.at({2 * k - 1, 2 * k}),
                           cx(-1.0));
      kernels::add_product(y, w[static_cast<size_t>(2 * k - 1)], c.at({2 * k, 2 * k}),
                           cx(-1.0));
      kernels::add_product(y, w[static_cast<size_t>(2 * k)], c_new, cx(-1.0));
      if (dense::spectral_norm(alpha) >= 1.0 - eps_defl) return stop(j - 1, alpha, y);
      alphas.append(alpha);
      c[{2 * k + 1, 2 * k}] = std::move(c_new);
      c[{2 * k + 1, 2 * k + 1}] = -alphas.alpha(2 * k + 1).adjoint() * alphas.alpha(2 * k);
      c[{2 * k + 2, 2 * k}] = alphas.rho_r(2 * k + 1) * alphas.rho_r(2 * k);
      c[{2 * k + 2, 2 * k + 1}] = -alphas.rho_r(2 * k + 1) * alphas.alpha(2 * k);
      Matrix wnew = dense::right_solve_hpd(y, alphas.rho_r(2 * k));
      w.push_back(dense::right_solve_hpd(wnew, alphas.rho_r(2 * k + 1)));
    }
  }

  res.cmv = assemble_cmv(alphas, res.basis.size());
  return res;
}

void cmv_finalize_alpha(const LinearOperator& a, CmvResult& result) {
  if (result.deflation)
    throw InvalidParameter("cmv_finalize_alpha: recurrence stopped at a deflation");
  if (result.finalized)
    throw InvalidParameter("cmv_finalize_alpha: coefficient already recovered");
  const Eigen::Index mdone = result.basis.size();
  if (result.alphas.size() != mdone - 1)
    throw InvalidParameter("cmv_finalize_alpha: unexpected coefficient count");
  auto& w = result.basis.blocks;
  Matrix alpha;
  if (mdone == 1) {
    Matrix x = a.apply(w[0]);
    ++result.counters.finalize_applications;
    Matrix c11 = kernels::inner_product(w[0], x);
    ++result.counters.finalize_inner_products;
    alpha = c11.adjoint();
  } else if (mdone % 2 == 0) {
    // Missing column block C_{m-1,m} = rho^L_{m-1} alpha_m^*.
    Matrix x = a.apply_adjoint(w[static_cast<size_t>(mdone - 2)]);
    ++result.counters.finalize_applications;
    Matrix cm = kernels::inner_product(x, w[static_cast<size_t>(mdone - 1)]);
    ++result.counters.finalize_inner_products;
    alpha = dense::left_solve_hpd(result.alphas.rho_l(mdone - 1), cm).adjoint();
  } else {
    // Missing row block C_{m,m-1} = alpha_m^* rho^R_{m-1}.
    Matrix x = a.apply(w[static_cast<size_t>(mdone - 2)]);
    ++result.counters.finalize_applications;
    Matrix cm = kernels::inner_product(w[static_cast<size_t>(mdone - 1)], x);
    ++result.counters.finalize_inner_products;
    alpha = dense::left_solve_hpd(result.alphas.rho_r(mdone - 1), cm.adjoint());
  }
  result.alphas.append(alpha, /*allow_boundary=*/true);
  result.cmv = cmv_cutoff(result.alphas, mdone);
  result.finalized = true;
}

ExtendedResult block_extended_arnoldi(const LinearOperator& a, const Matrix& b,
                                      Eigen::Index m) {
  if (m < 1) throw InvalidParameter("block_extended_arnoldi: m must be positive");
  if (!a.has_adjoint())
    throw AdjointUnavailable("block_extended_arnoldi: adjoint applications required");
  StartBlock start = normalize_start(a, b);
  const Eigen::Index s = b.cols();

  ExtendedResult res{BlockBasis{a.dim(), s, SpaceKind::Extended, {}}, std::nullopt,
                     Counters{}, start.factor};
  res.basis.blocks.push_back(std::move(start.v1));
  size_t pos_head = 0;  // block carrying the highest positive power so far
  size_t neg_head = 0;  // block carrying the highest negative power so far

  for (Eigen::Index j = 2; j <= m; ++j) {
    Matrix x = (j % 2 == 0) ? a.apply(res.basis.blocks[pos_head])
                            : a.apply_adjoint(res.basis.blocks[neg_head]);
    ++res.counters.operator_applications;
    const double x_scale = x.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const Matrix& wi : res.basis.blocks) {
        Matrix ci = kernels::inner_product(wi, x);
        ++res.counters.block_inner_products;
        kernels::add_product(x, wi, ci, cx(-1.0));
      }
    }
    dense::QrFactors qr = dense::thin_qr_rank_revealing(x, -1.0, x_scale);
    ++res.counters.block_inner_products;
    if (qr.rank < s) {
      DeflationReport rep;
      rep.step = j - 1;
      rep.rank = qr.rank;
      rep.residual_norm = x.norm();
      rep.retained_rows = a.dim();
      rep.retained_cols = qr.rank;
      rep.reduced_q = std::move(qr.q);
      rep.reduced_r = std::move(qr.r);
      res.deflation = std::move(rep);
      return res;
    }
    res.basis.blocks.push_back(std::move(qr.q));
    if (j % 2 == 0)
      pos_head = res.basis.blocks.size() - 1;
    else
      neg_head = res.basis.blocks.size() - 1;
  }
  return res;
}

void write_basis(const std::string& path, const BlockBasis& basis) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_basis: cannot open " + path);
  out << "ubk-basis " << basis.rows << " " << basis.block_size << " " << basis.size() << " "
      << (basis.kind == SpaceKind::Extended ? "extended" : "polynomial") << "\n";
  for (const Matrix& blk : basis.blocks)
    out.write(reinterpret_cast<const char*>(blk.data()),
              static_cast<std::streamsize>(sizeof(cx)) * blk.size());
  if (!out) throw Error("write_basis: write failed for " + path);
}

BlockBasis read_basis(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("read_basis: cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string tag, kind;
  Eigen::Index n = 0, s = 0, m = 0;
  hs >> tag >> n >> s >> m >> kind;
  if (tag != "ubk-basis" || n < 1 || s < 1 || m < 0 || (kind != "polynomial" && kind != "extended"))
    throw Error("read_basis: malformed header in " + path);
  BlockBasis basis{n, s, kind == "extended" ? SpaceKind::Extended : SpaceKind::Polynomial, {}};
  basis.blocks.reserve(static_cast<size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    Matrix blk(n, s);
    in.read(reinterpret_cast<char*>(blk.data()),
            static_cast<std::streamsize>(sizeof(cx)) * blk.size());
    if (!in) throw Error("read_basis: truncated payload in " + path);
    basis.blocks.push_back(std::move(blk));
  }
  return basis;
}

} // namespace ubk
