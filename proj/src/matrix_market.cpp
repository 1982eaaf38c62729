#include "sigb/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace sigb {

namespace {

enum class MmFormat { coordinate, array };
enum class MmField { real, complex_, integer, pattern };
enum class MmSymmetry { general, symmetric, hermitian, skew };

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_double(const std::string& tok, std::size_t line) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;  // from_chars rejects a leading plus
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("expected a number, got '" + tok + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + tok + "'", line);
  return v;
}

std::size_t parse_index(const std::string& tok, std::size_t extent, const char* what,
                        std::size_t line) {
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("expected a ") + what + " index, got '" + tok + "'", line);
  }
  if (v < 1 || v > extent) {
    throw ParseError(std::string(what) + " index " + tok + " out of range [1, " +
                     std::to_string(extent) + "]", line);
  }
  return static_cast<std::size_t>(v - 1);
}

std::size_t parse_count(const std::string& tok, const char* what, std::size_t line) {
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("expected a ") + what + ", got '" + tok + "'", line);
  }
  return static_cast<std::size_t>(v);
}

// Reads the next line that is neither blank nor a '%' comment.
bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (line[pos] == '%') continue;
    return true;
  }
  return false;
}

struct MmHeader {
  MmFormat format = MmFormat::coordinate;
  MmField field = MmField::real;
  MmSymmetry symmetry = MmSymmetry::general;
};

MmHeader parse_header(std::istream& in, std::size_t& lineno) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input, missing header", 1);
  lineno = 1;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> tok = split_tokens(line);
  if (tok.size() != 5 || lowercase(tok[0]) != "%%matrixmarket" || lowercase(tok[1]) != "matrix") {
    throw ParseError("malformed header, expected '%%MatrixMarket matrix <format> <field> "
                     "<symmetry>'", 1);
  }
  MmHeader h;
  std::string fmt = lowercase(tok[2]);
  std::string fld = lowercase(tok[3]);
  std::string sym = lowercase(tok[4]);
  if (fmt == "coordinate") h.format = MmFormat::coordinate;
  else if (fmt == "array") h.format = MmFormat::array;
  else throw ParseError("unknown format '" + tok[2] + "'", 1);
  if (fld == "real") h.field = MmField::real;
  else if (fld == "complex") h.field = MmField::complex_;
  else if (fld == "integer") h.field = MmField::integer;
  else if (fld == "pattern") h.field = MmField::pattern;
  else throw ParseError("unknown field '" + tok[3] + "'", 1);
  if (sym == "general") h.symmetry = MmSymmetry::general;
  else if (sym == "symmetric") h.symmetry = MmSymmetry::symmetric;
  else if (sym == "hermitian") h.symmetry = MmSymmetry::hermitian;
  else if (sym == "skew-symmetric") h.symmetry = MmSymmetry::skew;
  else throw ParseError("unknown symmetry '" + tok[4] + "'", 1);

  if (h.field == MmField::pattern && h.format == MmFormat::array) {
    throw ParseError("pattern field requires coordinate format", 1);
  }
  if (h.field == MmField::pattern && h.symmetry == MmSymmetry::skew) {
    throw ParseError("pattern field cannot be skew-symmetric", 1);
  }
  if (h.field == MmField::pattern && h.symmetry == MmSymmetry::hermitian) {
    throw ParseError("pattern field cannot be hermitian", 1);
  }
  if (h.symmetry == MmSymmetry::hermitian && h.field != MmField::complex_) {
    throw ParseError("hermitian symmetry requires the complex field", 1);
  }
  return h;
}

// Appends entry (i, j, v) plus its mirror image under the symmetry rule.
void push_expanded(std::vector<Entry>& entries, std::size_t i, std::size_t j, cplx v,
                   MmSymmetry sym, std::size_t line) {
  if (sym != MmSymmetry::general && i < j) {
    throw ParseError("entry above the diagonal in " +
                     std::string(sym == MmSymmetry::symmetric ? "symmetric"
                                 : sym == MmSymmetry::hermitian ? "hermitian"
                                                                 : "skew-symmetric") +
                     " storage", line);
  }
  if (sym == MmSymmetry::skew && i == j) {
    throw ParseError("diagonal entry in skew-symmetric storage", line);
  }
  if (sym == MmSymmetry::hermitian && i == j && v.imag() != 0.0) {
    throw ParseError("hermitian diagonal entry must be real", line);
  }
  entries.push_back({i, j, v});
  if (i != j) {
    switch (sym) {
      case MmSymmetry::general: break;
      case MmSymmetry::symmetric: entries.push_back({j, i, v}); break;
      case MmSymmetry::hermitian: entries.push_back({j, i, std::conj(v)}); break;
      case MmSymmetry::skew: entries.push_back({j, i, -v}); break;
    }
  }
}

Matrix parse_coordinate(std::istream& in, const MmHeader& h, std::size_t& lineno) {
  std::string line;
  if (!next_data_line(in, line, lineno)) throw ParseError("missing size line", lineno + 1);
  std::vector<std::string> tok = split_tokens(line);
  if (tok.size() != 3) {
    throw ParseError("coordinate size line must be 'rows cols nnz'", lineno);
  }
  std::size_t m = parse_count(tok[0], "row count", lineno);
  std::size_t n = parse_count(tok[1], "column count", lineno);
  std::size_t nnz = parse_count(tok[2], "entry count", lineno);
  if (m == 0 || n == 0) throw ParseError("matrix dimensions must be positive", lineno);
  if (h.symmetry != MmSymmetry::general && m != n) {
    throw ParseError("symmetric storage requires a square matrix", lineno);
  }

  std::size_t want = h.field == MmField::pattern ? 2 : h.field == MmField::complex_ ? 4 : 3;
  std::vector<Entry> entries;
  entries.reserve(h.symmetry == MmSymmetry::general ? nnz : 2 * nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!next_data_line(in, line, lineno)) {
      throw ParseError("expected " + std::to_string(nnz) + " entries, got " + std::to_string(k),
                       lineno + 1);
    }
    tok = split_tokens(line);
    if (tok.size() != want) {
      throw ParseError("entry line must have " + std::to_string(want) + " tokens, got " +
                       std::to_string(tok.size()), lineno);
    }
    std::size_t i = parse_index(tok[0], m, "row", lineno);
    std::size_t j = parse_index(tok[1], n, "column", lineno);
    cplx v{1.0, 0.0};
    if (h.field == MmField::complex_) {
      v = {parse_double(tok[2], lineno), parse_double(tok[3], lineno)};
    } else if (h.field != MmField::pattern) {
      v = {parse_double(tok[2], lineno), 0.0};
    }
    push_expanded(entries, i, j, v, h.symmetry, lineno);
  }
  if (next_data_line(in, line, lineno)) {
    throw ParseError("trailing content after the declared " + std::to_string(nnz) + " entries",
                     lineno);
  }
  return h.field == MmField::complex_ ? Matrix::sparse_complex(m, n, std::move(entries))
                                      : Matrix::sparse_real(m, n, std::move(entries));
}

Matrix parse_array(std::istream& in, const MmHeader& h, std::size_t& lineno) {
  std::string line;
  if (!next_data_line(in, line, lineno)) throw ParseError("missing size line", lineno + 1);
  std::vector<std::string> tok = split_tokens(line);
  if (tok.size() != 2) throw ParseError("array size line must be 'rows cols'", lineno);
  std::size_t m = parse_count(tok[0], "row count", lineno);
  std::size_t n = parse_count(tok[1], "column count", lineno);
  if (m == 0 || n == 0) throw ParseError("matrix dimensions must be positive", lineno);
  if (h.symmetry != MmSymmetry::general && m != n) {
    throw ParseError("symmetric storage requires a square matrix", lineno);
  }

  // Stored value count: full column-major for general, lower triangle
  // (diagonal included except for skew) otherwise.
  std::size_t count;
  if (h.symmetry == MmSymmetry::general) count = m * n;
  else if (h.symmetry == MmSymmetry::skew) count = m * (m - 1) / 2;
  else count = m * (m + 1) / 2;

  bool cx = h.field == MmField::complex_;
  std::vector<cplx> cvals(cx ? m * n : 0, cplx{0.0, 0.0});
  std::vector<double> rvals(cx ? 0 : m * n, 0.0);
  auto store = [&](std::size_t i, std::size_t j, cplx v) {
    if (cx) cvals[i * n + j] = v;
    else rvals[i * n + j] = v.real();
  };

  std::size_t j = 0;
  std::size_t i = h.symmetry == MmSymmetry::skew ? 1 : 0;
  for (std::size_t k = 0; k < count; ++k) {
    if (!next_data_line(in, line, lineno)) {
      throw ParseError("expected " + std::to_string(count) + " values, got " + std::to_string(k),
                       lineno + 1);
    }
    tok = split_tokens(line);
    std::size_t want = cx ? 2 : 1;
    if (tok.size() != want) {
      throw ParseError("array value line must have " + std::to_string(want) + " tokens, got " +
                       std::to_string(tok.size()), lineno);
    }
    cplx v = cx ? cplx{parse_double(tok[0], lineno), parse_double(tok[1], lineno)}
                : cplx{parse_double(tok[0], lineno), 0.0};
    switch (h.symmetry) {
      case MmSymmetry::general: store(i, j, v); break;
      case MmSymmetry::symmetric:
        store(i, j, v);
        if (i != j) store(j, i, v);
        break;
      case MmSymmetry::hermitian:
        if (i == j && v.imag() != 0.0) {
          throw ParseError("hermitian diagonal entry must be real", lineno);
        }
        store(i, j, v);
        if (i != j) store(j, i, std::conj(v));
        break;
      case MmSymmetry::skew:
        store(i, j, v);
        store(j, i, -v);
        break;
    }
    ++i;
    if (i == m) {
      ++j;
      i = h.symmetry == MmSymmetry::general ? 0 : h.symmetry == MmSymmetry::skew ? j + 1 : j;
    }
  }
  if (next_data_line(in, line, lineno)) {
    throw ParseError("trailing content after the declared " + std::to_string(count) + " values",
                     lineno);
  }
  return cx ? Matrix::dense(m, n, std::move(cvals)) : Matrix::dense(m, n, std::move(rvals));
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

Matrix parse_matrix_market(std::istream& in) {
  std::size_t lineno = 0;
  MmHeader h = parse_header(in, lineno);
  return h.format == MmFormat::coordinate ? parse_coordinate(in, h, lineno)
                                          : parse_array(in, h, lineno);
}

Matrix parse_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_matrix_market(in);
}

void write_matrix_market(const Matrix& a, std::ostream& out) {
  const char* field = a.is_complex() ? "complex" : "real";
  auto re = a.values_re();
  auto im = a.values_im();
  if (a.is_sparse()) {
    out << "%%MatrixMarket matrix coordinate " << field << " general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.stored_count() << '\n';
    auto rp = a.row_ptr();
    auto ci = a.col_idx();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
        out << (i + 1) << ' ' << (ci[k] + 1) << ' ' << format_double(re[k]);
        if (a.is_complex()) out << ' ' << format_double(im[k]);
        out << '\n';
      }
    }
  } else {
    out << "%%MatrixMarket matrix array " << field << " general\n";
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t i = 0; i < a.rows(); ++i) {
        std::size_t k = i * a.cols() + j;
        out << format_double(re[k]);
        if (a.is_complex()) out << ' ' << format_double(im[k]);
        out << '\n';
      }
    }
  }
}

void write_matrix_market(const Matrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_matrix_market(a, out);
  out.flush();
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace sigb
