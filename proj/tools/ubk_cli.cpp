// Batch front-end: generate unitary test matrices, run the block Krylov
// orthogonalization algorithms, execute the timing / accuracy / Ritz
// experiment sweeps, and run the invariant verification suite.
//
// Exit codes: 0 success, 2 deflation or breakdown, 3 invalid input,
// 4 numerical failure.

#include "ubk/diagnostics.hpp"
#include "ubk/dense.hpp"
#include "ubk/errors.hpp"
#include "ubk/krylov.hpp"
#include "ubk/matpoly.hpp"
#include "ubk/matrix_market.hpp"
#include "ubk/operators.hpp"
#include "ubk/rng.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

namespace {

using namespace ubk;

constexpr int kExitOk = 0;
constexpr int kExitDeflation = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitNumerical = 4;

struct MatrixSpec {
  std::string kind = "floquet";  // floquet | unitary-spectrum | normal-spectrum | file
  std::string path;              // for kind == file
  Eigen::Index n = 2000;
  std::uint64_t seed = 1;
  // unitary-spectrum parameters (repeated eigenvalue plus an excluded arc).
  Eigen::Index repeat = 0;
  double repeat_re = 1.0, repeat_im = 0.0;
  double arc = 0.0;  // remaining arguments avoid (-arc, arc)
  bool file_unitary = false;
  bool file_normal = false;
};

void add_matrix_options(CLI::App* cmd, MatrixSpec& spec) {
  cmd->add_option("--kind", spec.kind, "floquet | unitary-spectrum | normal-spectrum | file")
      ->check(CLI::IsMember({"floquet", "unitary-spectrum", "normal-spectrum", "file"}));
  cmd->add_option("--matrix", spec.path, "Matrix Market file for --kind file");
  cmd->add_option("-n,--n", spec.n, "matrix dimension");
  cmd->add_option("--seed", spec.seed, "seed for matrix generation and start block");
  cmd->add_option("--repeat", spec.repeat, "number of repeated eigenvalues");
  cmd->add_option("--repeat-re", spec.repeat_re, "repeated eigenvalue, real part");
  cmd->add_option("--repeat-im", spec.repeat_im, "repeated eigenvalue, imaginary part");
  cmd->add_option("--arc", spec.arc,
                  "half-width of the excluded argument arc around the repeated eigenvalue");
  cmd->add_flag("--unitary", spec.file_unitary, "mark a loaded matrix as unitary");
  cmd->add_flag("--normal", spec.file_normal, "mark a loaded matrix as normal");
}

Vector spectrum_nodes(const MatrixSpec& spec, bool on_circle, rng::Engine& eng) {
  Vector values(spec.n);
  const cx repeated(spec.repeat_re, spec.repeat_im);
  const double base = std::arg(repeated);
  for (Eigen::Index j = 0; j < spec.n; ++j) {
    if (j < spec.repeat) {
      values(j) = repeated;
      continue;
    }
    if (on_circle) {
      // Argument uniform on [arc, 2 pi - arc] relative to the repeated value.
      std::uniform_real_distribution<double> dist(spec.arc, 2.0 * std::numbers::pi - spec.arc);
      values(j) = std::polar(1.0, base + dist(eng));
    } else {
      std::uniform_real_distribution<double> radius(0.5, 1.5);
      values(j) = radius(eng) * rng::uniform_circle(eng);
    }
  }
  return values;
}

OperatorPtr build_operator(const MatrixSpec& spec, rng::Engine& eng) {
  if (spec.kind == "floquet") {
    if (spec.n < 2 || spec.n % 2 != 0)
      throw InvalidParameter("floquet matrices need an even dimension >= 2");
    std::vector<cx> alphas(static_cast<size_t>(spec.n));
    for (auto& a : alphas) a = rng::uniform_disk(eng);
    return floquet_unitary(alphas);
  }
  if (spec.kind == "unitary-spectrum")
    return unitary_with_spectrum(spectrum_nodes(spec, /*on_circle=*/true, eng), eng());
  if (spec.kind == "normal-spectrum")
    return normal_with_spectrum(spectrum_nodes(spec, /*on_circle=*/false, eng), eng());
  if (spec.kind == "file") {
    if (spec.path.empty()) throw InvalidParameter("--kind file requires --matrix");
    if (mm::is_coordinate_file(spec.path))
      return make_sparse_operator(mm::read_sparse(spec.path), spec.file_unitary,
                                  spec.file_unitary || spec.file_normal);
    return make_dense_operator(mm::read_dense(spec.path), spec.file_unitary,
                               spec.file_unitary || spec.file_normal);
  }
  throw InvalidParameter("unknown matrix kind: " + spec.kind);
}

std::string resolve_out_dir(std::string out_dir) {
  if (const char* env = std::getenv("UBK_OUTPUT_DIR"); env && *env) out_dir = env;
  std::filesystem::create_directories(out_dir);
  return out_dir;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_meta(const std::string& path, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
}

// ----------------------------------------------------------------- gen ----

struct GenConfig {
  MatrixSpec matrix;
  std::string out = "matrix.mtx";
};

int cmd_gen(const GenConfig& cfg) {
  rng::Engine eng(cfg.matrix.seed);
  if (cfg.matrix.kind == "floquet") {
    if (cfg.matrix.n < 2 || cfg.matrix.n % 2 != 0)
      throw InvalidParameter("floquet matrices need an even dimension >= 2");
    std::vector<cx> alphas(static_cast<size_t>(cfg.matrix.n));
    for (auto& a : alphas) a = rng::uniform_disk(eng);
    mm::write_sparse(cfg.out, floquet_factor1(alphas).multiply(floquet_factor2(alphas)));
  } else {
    OperatorPtr a = build_operator(cfg.matrix, eng);
    mm::write_dense(cfg.out, a->to_dense());
  }
  write_meta(cfg.out + ".meta",
             {{"kind", cfg.matrix.kind},
              {"n", std::to_string(cfg.matrix.n)},
              {"seed", std::to_string(cfg.matrix.seed)},
              {"repeat", std::to_string(cfg.matrix.repeat)},
              {"repeat_re", format_double(cfg.matrix.repeat_re)},
              {"repeat_im", format_double(cfg.matrix.repeat_im)},
              {"arc", format_double(cfg.matrix.arc)}});
  std::cout << "wrote " << cfg.out << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- run ----

struct RunConfig {
  MatrixSpec matrix;
  Eigen::Index s = 4;
  std::vector<Eigen::Index> schedule{30};
  std::vector<std::string> algorithms{"arnoldi", "isometric", "cmv", "laurent_gs"};
  std::string out_dir = "out";
  bool dump_basis = false;
};

void add_run_options(CLI::App* cmd, RunConfig& cfg) {
  add_matrix_options(cmd, cfg.matrix);
  cmd->add_option("-s,--s", cfg.s, "block size");
  cmd->add_option("-m,--m", cfg.schedule, "step schedule (list of m values)");
  cmd->add_option("--algs", cfg.algorithms,
                  "algorithms: arnoldi isometric cmv laurent_gs")
      ->check(CLI::IsMember({"arnoldi", "isometric", "cmv", "laurent_gs"}));
  cmd->add_option("--out-dir", cfg.out_dir, "output directory (UBK_OUTPUT_DIR overrides)");
  cmd->add_flag("--dump-basis", cfg.dump_basis, "write the basis of the largest run");
}

// One (algorithm, m) cell; records diagnostics and reports deflation.
ExperimentRecord run_cell(const std::string& alg, const LinearOperator& a, const Matrix& b,
                          Eigen::Index m, BlockBasis* basis_out, bool* deflated) {
  ExperimentRecord rec;
  rec.m = m;
  const auto t0 = std::chrono::steady_clock::now();
  if (alg == "arnoldi") {
    ArnoldiResult r = block_arnoldi(a, b, m);
    rec.wall_time_s = seconds_since(t0);
    rec.eps_orth = orthogonality_error(r.basis);
    rec.eps_proj = r.deflation ? std::nan("") : projection_error(a, r.basis, r.hess);
    rec.operator_applications = r.counters.operator_applications;
    rec.block_inner_products = r.counters.block_inner_products;
    if (r.deflation) *deflated = true, rec.status = "deflated";
    if (basis_out) *basis_out = std::move(r.basis);
  } else if (alg == "isometric") {
    IsometricResult r = block_isometric_arnoldi(a, b, m);
    if (!r.deflation) finalize_alpha_m(a, r);
    rec.wall_time_s = seconds_since(t0);
    rec.eps_orth = orthogonality_error(r.basis);
    rec.eps_proj = r.deflation
                       ? std::nan("")
                       : projection_error(a, r.basis, hessenberg_from_schur(r.alphas, m));
    rec.operator_applications = r.counters.operator_applications;
    rec.block_inner_products = r.counters.block_inner_products;
    if (r.deflation) *deflated = true, rec.status = "deflated";
    if (basis_out) *basis_out = std::move(r.basis);
  } else if (alg == "cmv") {
    CmvResult r = block_cmv_arnoldi(a, b, m);
    if (!r.deflation) cmv_finalize_alpha(a, r);
    rec.wall_time_s = seconds_since(t0);
    rec.eps_orth = orthogonality_error(r.basis);
    rec.eps_proj = r.deflation ? std::nan("") : projection_error(a, r.basis, r.cmv);
    rec.operator_applications = r.counters.operator_applications;
    rec.block_inner_products = r.counters.block_inner_products;
    if (r.deflation) *deflated = true, rec.status = "deflated";
    if (basis_out) *basis_out = std::move(r.basis);
  } else if (alg == "laurent_gs") {
    ExtendedResult r = block_extended_arnoldi(a, b, m);
    rec.wall_time_s = seconds_since(t0);
    rec.eps_orth = orthogonality_error(r.basis);
    rec.eps_proj = std::nan("");  // no structured projected matrix
    rec.operator_applications = r.counters.operator_applications;
    rec.block_inner_products = r.counters.block_inner_products;
    if (r.deflation) *deflated = true, rec.status = "deflated";
    if (basis_out) *basis_out = std::move(r.basis);
  } else {
    throw InvalidParameter("unknown algorithm: " + alg);
  }
  return rec;
}

int cmd_run(const RunConfig& cfg) {
  const std::string out_dir = resolve_out_dir(cfg.out_dir);
  rng::Engine eng(cfg.matrix.seed);
  OperatorPtr a = build_operator(cfg.matrix, eng);
  const Matrix b = rng::gaussian_block(a->dim(), cfg.s, eng);

  std::vector<Eigen::Index> schedule = cfg.schedule;
  std::sort(schedule.begin(), schedule.end());

  bool deflated = false;
  std::vector<ExperimentResult> results;
  for (const std::string& alg : cfg.algorithms) {
    if ((alg == "isometric" || alg == "cmv") && !a->is_unitary()) {
      std::cerr << "skipping " << alg << ": operator is not unitary\n";
      continue;
    }
    ExperimentResult res{alg, cfg.matrix.seed, a->dim(), cfg.s, {}};
    for (Eigen::Index m : schedule) {
      BlockBasis basis;
      const bool largest = (m == schedule.back());
      bool cell_deflated = false;
      ExperimentRecord rec = run_cell(alg, *a, b, m,
                                      cfg.dump_basis && largest ? &basis : nullptr,
                                      &cell_deflated);
      res.records.push_back(rec);
      if (cfg.dump_basis && largest)
        write_basis(out_dir + "/basis_" + alg + ".blk", basis);
      if (cell_deflated) {
        deflated = true;
        break;  // larger m cannot complete either
      }
    }
    results.push_back(std::move(res));
  }

  experiment_table(results).write(out_dir + "/run.csv");
  write_meta(out_dir + "/run.meta",
             {{"kind", cfg.matrix.kind},
              {"n", std::to_string(a->dim())},
              {"s", std::to_string(cfg.s)},
              {"seed", std::to_string(cfg.matrix.seed)},
              {"status", deflated ? "deflated" : "ok"}});
  std::cout << "wrote " << out_dir << "/run.csv\n";
  return deflated ? kExitDeflation : kExitOk;
}

// ---------------------------------------------------------- experiment ----

struct ExperimentConfig {
  std::string name = "accuracy";  // timing | accuracy | ritz
  MatrixSpec matrix;
  Eigen::Index s = 10;
  std::vector<Eigen::Index> schedule{10, 20, 30, 40, 50, 60};
  std::string out_dir = "out";
};

int experiment_timing(const ExperimentConfig& cfg, const std::string& out_dir) {
  rng::Engine eng(cfg.matrix.seed);
  OperatorPtr a = build_operator(cfg.matrix, eng);
  const Matrix b = rng::gaussian_block(a->dim(), cfg.s, eng);
  const std::vector<std::string> algs{"arnoldi", "isometric", "laurent_gs", "cmv"};

  CsvTable table;
  table.columns = {"m", "time_arnoldi", "time_isometric", "time_laurent_gs", "time_cmv"};
  for (Eigen::Index m : cfg.schedule) {
    std::vector<std::string> row{std::to_string(m)};
    for (const std::string& alg : algs) {
      const auto t0 = std::chrono::steady_clock::now();
      bool deflated = false;
      if (alg == "arnoldi")
        deflated = block_arnoldi(*a, b, m, -1.0, /*finalize=*/false).deflation.has_value();
      else if (alg == "isometric")
        deflated = block_isometric_arnoldi(*a, b, m).deflation.has_value();
      else if (alg == "laurent_gs")
        deflated = block_extended_arnoldi(*a, b, m).deflation.has_value();
      else
        deflated = block_cmv_arnoldi(*a, b, m).deflation.has_value();
      if (deflated) {
        std::cerr << "timing experiment hit a deflation at m = " << m << "\n";
        return kExitDeflation;
      }
      row.push_back(format_double(seconds_since(t0)));
    }
    table.rows.push_back(std::move(row));
  }
  table.write(out_dir + "/timing.csv");
  std::cout << "wrote " << out_dir << "/timing.csv\n";
  return kExitOk;
}

int experiment_accuracy(const ExperimentConfig& cfg, const std::string& out_dir) {
  rng::Engine eng(cfg.matrix.seed);
  OperatorPtr a = build_operator(cfg.matrix, eng);
  const Matrix b = rng::gaussian_block(a->dim(), cfg.s, eng);
  const Eigen::Index s = cfg.s;
  const Eigen::Index m_max = *std::max_element(cfg.schedule.begin(), cfg.schedule.end());

  // One run per algorithm to m_max; smaller m are read off the leading
  // submatrices (the bases are nested).
  ArnoldiResult arn = block_arnoldi(*a, b, m_max);
  IsometricResult iso = block_isometric_arnoldi(*a, b, m_max);
  CmvResult cmv = block_cmv_arnoldi(*a, b, m_max);
  ExtendedResult ext = block_extended_arnoldi(*a, b, m_max);
  if (arn.deflation || iso.deflation || cmv.deflation || ext.deflation) {
    std::cerr << "accuracy experiment hit a deflation; reduce m\n";
    return kExitDeflation;
  }
  finalize_alpha_m(*a, iso);
  cmv_finalize_alpha(*a, cmv);

  struct Nested {
    Matrix gram, proj;
  };
  auto nested = [&](const BlockBasis& basis) {
    return Nested{gram_matrix(basis), projection_matrix(*a, basis)};
  };
  const Nested na = nested(arn.basis), ni = nested(iso.basis), nc = nested(cmv.basis),
               ne = nested(ext.basis);
  const Matrix h_arn = arn.hess.to_dense();
  const Matrix h_iso = hessenberg_from_schur(iso.alphas, m_max).to_dense();
  const Matrix c_cmv = cmv.cmv.to_dense();

  auto orth_at = [s](const Nested& x, Eigen::Index m) {
    const Matrix g = x.gram.topLeftCorner(m * s, m * s);
    return (g - Matrix::Identity(m * s, m * s)).norm();
  };
  auto proj_at = [s](const Nested& x, const Matrix& t, Eigen::Index m) {
    return (x.proj.topLeftCorner(m * s, m * s) - t.topLeftCorner(m * s, m * s)).norm();
  };

  CsvTable table;
  table.columns = {"m",           "orth_arnoldi", "orth_isometric", "orth_cmv",
                   "orth_laurent_gs", "proj_arnoldi", "proj_isometric", "proj_cmv"};
  for (Eigen::Index m : cfg.schedule) {
    std::vector<std::string> row{std::to_string(m)};
    row.push_back(format_double(orth_at(na, m)));
    row.push_back(format_double(orth_at(ni, m)));
    row.push_back(format_double(orth_at(nc, m)));
    row.push_back(format_double(orth_at(ne, m)));
    row.push_back(format_double(proj_at(na, h_arn, m)));
    // The Hessenberg / CMV cutoffs at order m depend only on the leading
    // recurrence coefficients, so their dense leading submatrices match the
    // order-m assemblies.
    row.push_back(format_double(proj_at(ni, h_iso, m)));
    row.push_back(format_double(proj_at(nc, c_cmv, m)));
    table.rows.push_back(std::move(row));
  }
  table.write(out_dir + "/accuracy.csv");
  std::cout << "wrote " << out_dir << "/accuracy.csv\n";
  return kExitOk;
}

int experiment_ritz(const ExperimentConfig& cfg, const std::string& out_dir) {
  const cx target(cfg.matrix.repeat_re, cfg.matrix.repeat_im);
  const Eigen::Index m_max = *std::max_element(cfg.schedule.begin(), cfg.schedule.end());

  // Two sweeps sharing the matrix seed: block sizes 1 and 4.
  std::vector<std::vector<std::vector<double>>> distances;  // [sweep][m][j]
  const std::vector<Eigen::Index> sizes{1, 4};
  for (Eigen::Index s : sizes) {
    rng::Engine eng(cfg.matrix.seed);
    OperatorPtr a = build_operator(cfg.matrix, eng);
    const Matrix b = rng::gaussian_block(a->dim(), s, eng);
    IsometricResult iso = block_isometric_arnoldi(*a, b, m_max);
    if (iso.deflation) {
      std::cerr << "ritz experiment hit a deflation; reduce m\n";
      return kExitDeflation;
    }
    finalize_alpha_m(*a, iso);
    const Eigen::Index j_max = (s == 1) ? 2 : 4;
    std::vector<std::vector<double>> per_m;
    for (Eigen::Index m : cfg.schedule) {
      const Matrix t = hessenberg_from_schur(iso.alphas, m).to_dense();
      per_m.push_back(ritz_distances(t, target, std::min(j_max, t.rows())));
    }
    distances.push_back(std::move(per_m));
  }

  CsvTable table;
  table.columns = {"m",           "s1_closest1", "s1_closest2", "s4_closest1",
                   "s4_closest2", "s4_closest3", "s4_closest4"};
  for (size_t r = 0; r < cfg.schedule.size(); ++r) {
    std::vector<std::string> row{std::to_string(cfg.schedule[r])};
    for (size_t sweep = 0; sweep < sizes.size(); ++sweep) {
      const size_t want = (sweep == 0) ? 2 : 4;
      for (size_t j = 0; j < want; ++j)
        row.push_back(j < distances[sweep][r].size()
                          ? format_double(distances[sweep][r][j])
                          : "nan");
    }
    table.rows.push_back(std::move(row));
  }
  table.write(out_dir + "/ritz.csv");
  std::cout << "wrote " << out_dir << "/ritz.csv\n";
  return kExitOk;
}

int cmd_experiment(const ExperimentConfig& cfg) {
  const std::string out_dir = resolve_out_dir(cfg.out_dir);
  if (cfg.name == "timing") return experiment_timing(cfg, out_dir);
  if (cfg.name == "accuracy") return experiment_accuracy(cfg, out_dir);
  if (cfg.name == "ritz") return experiment_ritz(cfg, out_dir);
  throw InvalidParameter("unknown experiment: " + cfg.name);
}

// -------------------------------------------------------------- verify ----

struct VerifyConfig {
  std::uint64_t seed = 7;
  bool corrupt_alpha = false;  // negative control for the coefficient check
};

int cmd_verify(const VerifyConfig& cfg) {
  int failures = 0;
  auto check = [&](const std::string& name, double value, double cap) {
    const bool ok = value <= cap;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << value << " vs " << cap
              << ")\n";
  };

  rng::Engine eng(cfg.seed);

  // Measure oracle: action- and measure-based inner products agree.
  {
    const Eigen::Index n = 200, s = 3;
    Vector values(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      std::uniform_real_distribution<double> radius(0.5, 1.5);
      values(j) = radius(eng) * rng::uniform_circle(eng);
    }
    OperatorPtr a = normal_with_spectrum(values, eng());
    const Matrix b = rng::gaussian_block(n, s, eng);
    const SpectralMeasure mu = spectral_measure_of(*a, b);
    double worst = 0.0;
    for (Eigen::Index d = 0; d <= 6; ++d) {
      const MatrixPolynomial p = MatrixPolynomial::monomial(s, d);
      const MatrixPolynomial q = MatrixPolynomial::monomial(s, 6 - d);
      worst = std::max(worst, (inner_product_action(p, q, *a, b) -
                               inner_product_measure(p, q, mu)).norm());
    }
    check("measure-oracle", worst, 1e-12 * b.squaredNorm());
  }

  // Unitary instance shared by the remaining checks.
  const Eigen::Index n = 300, s = 3, m = 12;
  std::vector<cx> fl(static_cast<size_t>(n));
  for (auto& v : fl) v = rng::uniform_disk(eng);
  OperatorPtr a = floquet_unitary(fl);
  const Matrix b = rng::gaussian_block(n, s, eng);

  IsometricResult iso = block_isometric_arnoldi(*a, b, m);
  finalize_alpha_m(*a, iso);
  CmvResult cmv = block_cmv_arnoldi(*a, b, m);
  cmv_finalize_alpha(*a, cmv);

  // Szego orthonormality under the spectral measure of (A, B).
  {
    OperatorPtr ad = make_dense_operator(a->to_dense(), true, true);
    const SpectralMeasure mu = spectral_measure_of(*ad, iso.basis.blocks.front());
    const SzegoPolynomials sz = szego_polynomials(iso.alphas, m);
    double worst = 0.0;
    for (Eigen::Index i = 0; i <= m; ++i)
      for (Eigen::Index j = 0; j <= m; ++j) {
        Matrix g = inner_product_measure(sz.phi_r[static_cast<size_t>(i)],
                                         sz.phi_r[static_cast<size_t>(j)], mu);
        if (i == j) g -= Matrix::Identity(s, s);
        worst = std::max(worst, g.norm());
      }
    check("szego-orthonormality", worst, 1e-10);
  }

  // Schur parametrization and factorization.
  {
    const BlockHessenberg h = hessenberg_from_schur(iso.alphas, m);
    check("hessenberg-projection", projection_error(*a, iso.basis, h), 1e-10);
    const SchurFactors fac = schur_factorization(iso.alphas, m);
    check("schur-factorization", (fac.product() - h.to_dense()).norm(), 1e-12);
  }

  // CMV assembly and the spectral similarity of the two cutoffs.
  {
    check("cmv-projection", projection_error(*a, cmv.basis, cmv.cmv), 1e-10);
    check("cmv-vs-hessenberg",
          similarity_check(hessenberg_from_schur(iso.alphas, m), cmv.cmv), 1e-8);
  }

  // Coefficient admissibility (optionally with an injected bad coefficient).
  {
    VerblunskyReport rep = verify_verblunsky(iso.alphas);
    if (cfg.corrupt_alpha) rep.norms.push_back(1.05);
    double worst_norm = 0.0;
    // The finalized coefficient may reach the boundary; interior ones may not.
    for (size_t k = 0; k + 1 < rep.norms.size(); ++k)
      worst_norm = std::max(worst_norm, rep.norms[k]);
    if (cfg.corrupt_alpha) worst_norm = std::max(worst_norm, rep.norms.back());
    check("verblunsky-norms", worst_norm, 1.0 - 1e-8);
    double worst_rho = 0.0;
    for (double v : rep.rho_r_residuals) worst_rho = std::max(worst_rho, v);
    for (double v : rep.rho_l_residuals) worst_rho = std::max(worst_rho, v);
    check("verblunsky-rho-identities", worst_rho, 1e-12);
  }

  if (failures) {
    std::cout << failures << " check(s) failed\n";
    return kExitNumerical;
  }
  std::cout << "all checks passed\n";
  return kExitOk;
}

// -------------------------------------------------------- print-config ----

int cmd_print_config() {
  std::cout << "[matrix]\n"
               "kind = floquet\n"
               "n = 2000\n"
               "seed = 1\n"
               "repeat = 0\n"
               "repeat-re = 1.0\n"
               "repeat-im = 0.0\n"
               "arc = 0.0\n"
               "\n"
               "[run]\n"
               "s = 4\n"
               "m = 30\n"
               "algs = arnoldi isometric cmv laurent_gs\n"
               "out-dir = out\n"
               "\n"
               "[experiment]\n"
               "name = accuracy\n"
               "s = 10\n"
               "m = 10 20 30 40 50 60\n"
               "\n"
               "[verify]\n"
               "seed = 7\n";
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"block Krylov orthogonalization for unitary matrices"};
  app.require_subcommand(1);
  app.set_config("--config");

  GenConfig gen_cfg;
  CLI::App* gen = app.add_subcommand("gen", "generate a test matrix");
  add_matrix_options(gen, gen_cfg.matrix);
  gen->add_option("--out", gen_cfg.out, "output Matrix Market file");

  RunConfig run_cfg;
  CLI::App* run = app.add_subcommand("run", "run algorithms and emit diagnostics");
  add_run_options(run, run_cfg);

  ExperimentConfig exp_cfg;
  CLI::App* exp = app.add_subcommand("experiment", "timing | accuracy | ritz sweep");
  exp->add_option("name", exp_cfg.name, "timing | accuracy | ritz")
      ->required()
      ->check(CLI::IsMember({"timing", "accuracy", "ritz"}));
  add_matrix_options(exp, exp_cfg.matrix);
  exp->add_option("-s,--s", exp_cfg.s, "block size (timing/accuracy)");
  exp->add_option("-m,--m", exp_cfg.schedule, "m schedule");
  exp->add_option("--out-dir", exp_cfg.out_dir, "output directory (UBK_OUTPUT_DIR overrides)");

  VerifyConfig ver_cfg;
  CLI::App* ver = app.add_subcommand("verify", "run the invariant suite");
  ver->add_option("--seed", ver_cfg.seed, "suite seed");
  ver->add_flag("--corrupt-alpha", ver_cfg.corrupt_alpha,
                "inject an invalid coefficient (negative control)");

  CLI::App* pc = app.add_subcommand("print-config", "print all defaults");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_cfg);
    if (run->parsed()) return cmd_run(run_cfg);
    if (exp->parsed()) return cmd_experiment(exp_cfg);
    if (ver->parsed()) return cmd_verify(ver_cfg);
    if (pc->parsed()) return cmd_print_config();
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const InvalidStart& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const InvalidVerblunsky& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
