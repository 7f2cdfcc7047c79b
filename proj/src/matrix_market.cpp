#include "sylv/matrix_market.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sylv/error.hpp"

namespace sylv {

namespace {

enum class Layout { Coordinate, Array };
enum class Symmetry { General, Symmetric, SkewSymmetric };

struct Header {
  Layout layout;
  Symmetry symmetry;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void parse_error(const std::filesystem::path& path, std::size_t line,
                              const std::string& msg) {
  throw Error(ErrorCode::Parse,
              path.string() + ":" + std::to_string(line) + ": " + msg);
}

Header parse_banner(const std::string& line, const std::filesystem::path& path) {
  std::istringstream in(line);
  std::string banner, object, format, field, symmetry;
  in >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") parse_error(path, 1, "missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") parse_error(path, 1, "unsupported object '" + object + "'");

  Header h{};
  if (format == "coordinate") {
    h.layout = Layout::Coordinate;
  } else if (format == "array") {
    h.layout = Layout::Array;
  } else {
    parse_error(path, 1, "unsupported format '" + format + "'");
  }
  if (field != "real" && field != "double" && field != "integer") {
    parse_error(path, 1, "non-real field '" + field + "'");
  }
  if (symmetry == "general") {
    h.symmetry = Symmetry::General;
  } else if (symmetry == "symmetric") {
    h.symmetry = Symmetry::Symmetric;
  } else if (symmetry == "skew-symmetric") {
    h.symmetry = Symmetry::SkewSymmetric;
  } else {
    parse_error(path, 1, "unsupported symmetry '" + symmetry + "'");
  }
  return h;
}

double parse_value(const std::string& token, const std::filesystem::path& path,
                   std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) parse_error(path, line, "bad value '" + token + "'");
  if (!std::isfinite(v)) parse_error(path, line, "non-finite value");
  return v;
}

std::size_t parse_index(const std::string& token, const std::filesystem::path& path,
                        std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    parse_error(path, line, "bad index '" + token + "'");
  }
  return v;
}

void add_mirrored(std::vector<Triplet>& out, Symmetry sym, std::size_t i, std::size_t j,
                  double v) {
  out.push_back({i, j, v});
  if (i == j || sym == Symmetry::General) return;
  out.push_back({j, i, sym == Symmetry::Symmetric ? v : -v});
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

CsrMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");

  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) parse_error(path, 1, "empty file");
  const Header header = parse_banner(line, path);

  // Skip comments and blank lines up to the size line.
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    have_size = true;
    break;
  }
  if (!have_size) parse_error(path, line_no, "missing size line");

  std::istringstream size_line(line);
  std::vector<std::string> tokens;
  for (std::string t; size_line >> t;) tokens.push_back(t);
  const std::size_t expected_tokens = header.layout == Layout::Coordinate ? 3 : 2;
  if (tokens.size() != expected_tokens) parse_error(path, line_no, "malformed size line");
  const std::size_t rows = parse_index(tokens[0], path, line_no);
  const std::size_t cols = parse_index(tokens[1], path, line_no);
  if (header.symmetry != Symmetry::General && rows != cols) {
    parse_error(path, line_no, "symmetric storage requires a square matrix");
  }

  std::size_t expected = 0;
  if (header.layout == Layout::Coordinate) {
    expected = parse_index(tokens[2], path, line_no);
  } else if (header.symmetry == Symmetry::General) {
    expected = rows * cols;
  } else if (header.symmetry == Symmetry::Symmetric) {
    expected = rows * (rows + 1) / 2;
  } else {
    expected = rows * (rows - (rows > 0 ? 1 : 0)) / 2;
  }

  std::vector<Triplet> triplets;
  triplets.reserve(header.symmetry == Symmetry::General ? expected : 2 * expected);
  std::size_t read = 0;
  // Position of the next array entry (column-major, lower triangle when symmetric).
  std::size_t ai = header.symmetry == Symmetry::SkewSymmetric ? 1 : 0;
  std::size_t aj = 0;
  while (read < expected && std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    std::istringstream entry(line);
    tokens.clear();
    for (std::string t; entry >> t;) tokens.push_back(t);

    if (header.layout == Layout::Coordinate) {
      if (tokens.size() != 3) parse_error(path, line_no, "expected 'row col value'");
      const std::size_t i = parse_index(tokens[0], path, line_no);
      const std::size_t j = parse_index(tokens[1], path, line_no);
      if (i < 1 || i > rows || j < 1 || j > cols) {
        parse_error(path, line_no, "index (" + tokens[0] + "," + tokens[1] +
                                       ") out of declared bounds");
      }
      if (header.symmetry != Symmetry::General && j > i) {
        parse_error(path, line_no, "upper-triangle entry in symmetric file");
      }
      add_mirrored(triplets, header.symmetry, i - 1, j - 1,
                   parse_value(tokens[2], path, line_no));
    } else {
      if (tokens.size() != 1) parse_error(path, line_no, "expected one value per line");
      const double v = parse_value(tokens[0], path, line_no);
      if (v != 0.0) add_mirrored(triplets, header.symmetry, ai, aj, v);
      if (++ai == rows) {
        ++aj;
        ai = header.symmetry == Symmetry::General ? 0
             : header.symmetry == Symmetry::Symmetric ? aj
                                                       : aj + 1;
      }
    }
    ++read;
  }
  if (read != expected) {
    parse_error(path, line_no,
                "expected " + std::to_string(expected) + " entries, found " +
                    std::to_string(read));
  }
  return CsrMatrix::from_triplets(rows, cols, std::move(triplets));
}

DenseMatrix read_matrix_market_dense(const std::filesystem::path& path) {
  return read_matrix_market(path).to_dense();
}

void write_matrix_market(const CsrMatrix& m, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  const auto offsets = m.row_offsets();
  const auto cols = m.col_indices();
  const auto vals = m.values();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
      out << i + 1 << ' ' << cols[k] + 1 << ' ' << format_double(vals[k]) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

void write_matrix_market(const DenseMatrix& m, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  for (double v : m.values()) out << format_double(v) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

}  // namespace sylv
