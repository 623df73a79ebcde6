#include "ubk/matrix_market.hpp"

#include "ubk/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ubk::mm {

namespace {

struct Header {
  std::string format;  // "coordinate" or "array"
  std::string field;
  std::string symmetry;
};

Header read_header(std::istream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line))
    throw InvalidParameter("matrix market: empty file " + path);
  std::istringstream hs(line);
  std::string banner, object;
  Header h;
  hs >> banner >> object >> h.format >> h.field >> h.symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix")
    throw InvalidParameter("matrix market: bad banner in " + path);
  if (h.field != "complex")
    throw InvalidParameter("matrix market: only the complex field is supported");
  if (h.symmetry != "general")
    throw InvalidParameter("matrix market: only general symmetry is supported");
  return h;
}

std::string next_data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size() || line[i] == '%') continue;
    return line;
  }
  throw InvalidParameter("matrix market: unexpected end of file");
}

} // namespace

void write_sparse(const std::string& path, const SparseComplexMatrix& a) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("matrix market: cannot open " + path);
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << a.dim() << " " << a.dim() << " " << a.nnz() << "\n";
  out.precision(17);
  for (Eigen::Index r = 0; r < a.dim(); ++r)
    for (Eigen::Index k = a.row_offsets()[static_cast<size_t>(r)];
         k < a.row_offsets()[static_cast<size_t>(r) + 1]; ++k)
      out << r + 1 << " " << a.col_indices()[static_cast<size_t>(k)] + 1 << " "
          << a.values()[static_cast<size_t>(k)].real() << " "
          << a.values()[static_cast<size_t>(k)].imag() << "\n";
}

SparseComplexMatrix read_sparse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("matrix market: cannot open " + path);
  Header h = read_header(in, path);
  if (h.format != "coordinate")
    throw InvalidParameter("matrix market: expected coordinate format in " + path);
  std::istringstream sz(next_data_line(in));
  Eigen::Index rows = 0, cols = 0, nnz = 0;
  sz >> rows >> cols >> nnz;
  if (rows != cols || rows <= 0)
    throw InvalidParameter("matrix market: square matrix expected");
  std::vector<SparseComplexMatrix::Triplet> tr;
  tr.reserve(static_cast<size_t>(nnz));
  for (Eigen::Index k = 0; k < nnz; ++k) {
    std::istringstream ls(next_data_line(in));
    Eigen::Index r = 0, c = 0;
    double re = 0.0, im = 0.0;
    ls >> r >> c >> re >> im;
    tr.push_back({r - 1, c - 1, cx(re, im)});
  }
  return SparseComplexMatrix::from_triplets(rows, std::move(tr));
}

void write_dense(const std::string& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("matrix market: cannot open " + path);
  out << "%%MatrixMarket matrix array complex general\n";
  out << a.rows() << " " << a.cols() << "\n";
  out.precision(17);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out << a(i, j).real() << " " << a(i, j).imag() << "\n";
}

Matrix read_dense(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("matrix market: cannot open " + path);
  Header h = read_header(in, path);
  if (h.format != "array")
    throw InvalidParameter("matrix market: expected array format in " + path);
  std::istringstream sz(next_data_line(in));
  Eigen::Index rows = 0, cols = 0;
  sz >> rows >> cols;
  Matrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      std::istringstream ls(next_data_line(in));
      double re = 0.0, im = 0.0;
      ls >> re >> im;
      a(i, j) = cx(re, im);
    }
  return a;
}

bool is_coordinate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("matrix market: cannot open " + path);
  return read_header(in, path).format == "coordinate";
}

Matrix read_any_dense(const std::string& path) {
  return is_coordinate_file(path) ? read_sparse(path).to_dense() : read_dense(path);
}

} // namespace ubk::mm
