#include "costlab/harness/matrix_io.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "costlab/format.hpp"

namespace costlab::harness {

using linalg::Matrix;

namespace {

double parse_double(const std::string& token, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE)
    throw ParseError("non-numeric token '" + token + "'", line);
  return value;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Matrix load_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++line_no;
  {
    std::istringstream hdr(line);
    std::string banner, object, fmt, field, symmetry;
    hdr >> banner >> object >> fmt >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix")
      throw ParseError("not a MatrixMarket header", line_no);
    if (fmt != "array" || field != "real" || symmetry != "general")
      throw ParseError("unsupported MatrixMarket type '" + fmt + " " + field +
                           " " + symmetry + "' (need array real general)",
                       line_no);
  }

  // Skip comments, then read the size line.
  std::size_t rows = 0;
  std::size_t cols = 0;
  while (true) {
    if (!std::getline(in, line)) throw ParseError("missing size line", line_no + 1);
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    std::istringstream sz(t);
    long long r = 0, c = 0;
    if (!(sz >> r >> c) || r <= 0 || c <= 0)
      throw ParseError("bad size line '" + t + "'", line_no);
    std::string rest;
    if (sz >> rest) throw ParseError("trailing token on size line", line_no);
    rows = static_cast<std::size_t>(r);
    cols = static_cast<std::size_t>(c);
    break;
  }

  // Array format stores entries one per line, column-major.
  Matrix m(rows, cols);
  std::size_t count = 0;
  const std::size_t expected = rows * cols;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    if (count >= expected)
      throw ParseError("more entries than rows*cols", line_no);
    const double value = parse_double(t, line_no);
    m(count % rows, count / rows) = value;
    ++count;
  }
  if (count != expected) {
    throw ParseError("expected " + std::to_string(expected) +
                         " entries, found " + std::to_string(count),
                     line_no);
  }
  linalg::ensure_finite(m, "load_matrix (matrix-market)");
  return m;
}

Matrix load_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t cols = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      row.push_back(parse_double(trim(cell), line_no));
    if (cols == 0) {
      cols = row.size();
    } else if (row.size() != cols) {
      throw ParseError("expected " + std::to_string(cols) + " values, found " +
                           std::to_string(row.size()),
                       line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty file", line_no == 0 ? 1 : line_no);
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  linalg::ensure_finite(m, "load_matrix (csv)");
  return m;
}

}  // namespace

MatrixFileFormat parse_matrix_format(std::string_view token) {
  if (token == "matrix-market" || token == "mm")
    return MatrixFileFormat::MatrixMarket;
  if (token == "csv") return MatrixFileFormat::Csv;
  throw InvalidInputError("unknown matrix format '" + std::string(token) +
                          "' (expected matrix-market or csv)");
}

Matrix load_matrix(const std::string& path, MatrixFileFormat format) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open '" + path + "' for reading");
  return format == MatrixFileFormat::MatrixMarket ? load_matrix_market(in)
                                                  : load_csv(in);
}

void save_matrix(const Matrix& m, const std::string& path,
                 MatrixFileFormat format) {
  if (m.empty()) throw InvalidInputError("save_matrix: empty matrix");
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open '" + path + "' for writing");
  if (format == MatrixFileFormat::MatrixMarket) {
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        out << format_g17(m(i, j)) << '\n';
  } else {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) out << ',';
        out << format_g17(m(i, j));
      }
      out << '\n';
    }
  }
  if (!out) throw InvalidInputError("write to '" + path + "' failed");
}

}  // namespace costlab::harness
