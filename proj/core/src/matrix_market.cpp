#include "condest/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "condest/errors.hpp"

namespace condest {

namespace {

enum class Format { Coordinate, Array };
enum class Field { Real, Integer, Pattern };
enum class Symmetry { General, Symmetric, SkewSymmetric };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    out.push_back(tok);
  }
  return out;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line, "expected a nonnegative integer, got '" + tok + "'");
  }
  return v;
}

double parse_value(const std::string& tok, std::size_t line) {
  // strtod also accepts the Fortran-style forms ("3.", "-.5") found in
  // older collection files.
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty()) {
    throw ParseError(line, "expected a number, got '" + tok + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(line, "non-finite value '" + tok + "'");
  }
  return v;
}

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_{in} {}

  // Next line that is neither a comment nor blank. Returns false at EOF.
  bool next_data_line(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      if (blank(line) || line.front() == '%') {
        continue;
      }
      return true;
    }
    return false;
  }

  bool next_raw_line(std::string& line) {
    if (!std::getline(in_, line)) {
      return false;
    }
    ++number_;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    return true;
  }

  std::size_t number() const { return number_; }

private:
  std::istream& in_;
  std::size_t number_ = 0;
};

}  // namespace

MatrixMarketMatrix parse_matrix_market(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next_raw_line(line)) {
    throw ParseError(0, "empty input");
  }

  const auto header = split_ws(line);
  if (header.size() != 5 || header[0] != "%%MatrixMarket") {
    throw ParseError(reader.number(),
                     "malformed header, expected '%%MatrixMarket matrix <format> <field> "
                     "<symmetry>'");
  }
  if (lower(header[1]) != "matrix") {
    throw ParseError(reader.number(), "unsupported object '" + header[1] + "'");
  }

  Format format{};
  const auto fmt = lower(header[2]);
  if (fmt == "coordinate") {
    format = Format::Coordinate;
  } else if (fmt == "array") {
    format = Format::Array;
  } else {
    throw ParseError(reader.number(), "unknown format '" + header[2] + "'");
  }

  Field field{};
  const auto fld = lower(header[3]);
  if (fld == "real" || fld == "double") {
    field = Field::Real;
  } else if (fld == "integer") {
    field = Field::Integer;
  } else if (fld == "pattern") {
    field = Field::Pattern;
  } else if (fld == "complex") {
    throw ParseError(reader.number(), "complex matrices are not supported");
  } else {
    throw ParseError(reader.number(), "unknown field '" + header[3] + "'");
  }

  Symmetry symmetry{};
  const auto sym = lower(header[4]);
  if (sym == "general") {
    symmetry = Symmetry::General;
  } else if (sym == "symmetric") {
    symmetry = Symmetry::Symmetric;
  } else if (sym == "skew-symmetric") {
    symmetry = Symmetry::SkewSymmetric;
  } else if (sym == "hermitian") {
    throw ParseError(reader.number(), "hermitian matrices are not supported");
  } else {
    throw ParseError(reader.number(), "unknown symmetry '" + header[4] + "'");
  }

  if (format == Format::Array && field == Field::Pattern) {
    throw ParseError(reader.number(), "pattern field requires coordinate format");
  }

  if (!reader.next_data_line(line)) {
    throw ParseError(reader.number(), "missing size line");
  }
  const auto size_tokens = split_ws(line);
  const std::size_t expected_size_tokens = format == Format::Coordinate ? 3 : 2;
  if (size_tokens.size() != expected_size_tokens) {
    throw ParseError(reader.number(), "malformed size line");
  }
  const std::size_t rows = parse_index(size_tokens[0], reader.number());
  const std::size_t cols = parse_index(size_tokens[1], reader.number());
  if (rows == 0 || cols == 0) {
    throw ParseError(reader.number(), "matrix dimensions must be positive");
  }
  if (symmetry != Symmetry::General && rows != cols) {
    throw ParseError(reader.number(), "symmetric storage requires a square matrix");
  }

  if (format == Format::Coordinate) {
    const std::size_t declared = parse_index(size_tokens[2], reader.number());
    const std::size_t values_per_line = field == Field::Pattern ? 2 : 3;
    std::vector<Triplet> entries;
    entries.reserve(symmetry == Symmetry::General ? declared : 2 * declared);
    for (std::size_t k = 0; k < declared; ++k) {
      if (!reader.next_data_line(line)) {
        throw ParseError(reader.number(), "expected " + std::to_string(declared) +
                                              " entries, found " + std::to_string(k));
      }
      const auto tok = split_ws(line);
      if (tok.size() != values_per_line) {
        throw ParseError(reader.number(), "expected " + std::to_string(values_per_line) +
                                              " tokens per entry");
      }
      const std::size_t i = parse_index(tok[0], reader.number());
      const std::size_t j = parse_index(tok[1], reader.number());
      if (i < 1 || i > rows || j < 1 || j > cols) {
        throw ParseError(reader.number(), "index (" + tok[0] + ", " + tok[1] + ") out of range");
      }
      const double v = field == Field::Pattern ? 1.0 : parse_value(tok[2], reader.number());
      if (symmetry == Symmetry::SkewSymmetric && i == j && v != 0.0) {
        throw ParseError(reader.number(), "skew-symmetric matrix with nonzero diagonal");
      }
      entries.push_back({i - 1, j - 1, v});
      if (symmetry != Symmetry::General && i != j) {
        entries.push_back({j - 1, i - 1, symmetry == Symmetry::SkewSymmetric ? -v : v});
      }
    }
    if (reader.next_data_line(line)) {
      throw ParseError(reader.number(), "trailing data after declared entries");
    }
    return SparseMatrixCsr::from_triplets(rows, cols, std::move(entries));
  }

  // Array format: column-major, lower triangle only for symmetric variants.
  std::vector<double> data(rows * cols, 0.0);
  const auto read_next = [&]() {
    if (!reader.next_data_line(line)) {
      throw ParseError(reader.number(), "unexpected end of array data");
    }
    const auto tok = split_ws(line);
    if (tok.size() != 1) {
      throw ParseError(reader.number(), "expected one value per line");
    }
    return parse_value(tok[0], reader.number());
  };
  for (std::size_t j = 0; j < cols; ++j) {
    const std::size_t first_row = symmetry == Symmetry::General        ? 0
                                  : symmetry == Symmetry::SkewSymmetric ? j + 1
                                                                        : j;
    for (std::size_t i = first_row; i < rows; ++i) {
      const double v = read_next();
      data[j * rows + i] = v;
      if (symmetry == Symmetry::Symmetric && i != j) {
        data[i * rows + j] = v;
      } else if (symmetry == Symmetry::SkewSymmetric) {
        data[i * rows + j] = -v;
      }
    }
  }
  if (reader.next_data_line(line)) {
    throw ParseError(reader.number(), "trailing data after array entries");
  }
  return DenseMatrix(rows, cols, std::move(data));
}

MatrixMarketMatrix parse_matrix_market(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_market(in);
}

MatrixMarketMatrix read_matrix_market_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(0, "cannot open '" + path.string() + "'");
  }
  return parse_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrixCsr& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : a.triplets()) {
    out << (e.row + 1) << ' ' << (e.col + 1) << ' ' << e.value << '\n';
  }
  out.precision(old_precision);
}

std::unique_ptr<LinearOperator> to_operator(MatrixMarketMatrix m) {
  return std::visit(
      [](auto&& mat) -> std::unique_ptr<LinearOperator> {
        using T = std::decay_t<decltype(mat)>;
        return std::make_unique<T>(std::move(mat));
      },
      std::move(m));
}

}  // namespace condest
