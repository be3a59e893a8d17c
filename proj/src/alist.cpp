#include "qcising/alist.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "qcising/errors.hpp"

namespace qcising {

std::string write_alist(const BinaryMatrix& h) {
  const std::size_t n = h.cols();
  const std::size_t m = h.rows();
  std::vector<std::vector<std::size_t>> col_adj(n);
  std::vector<std::vector<std::size_t>> row_adj(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (h.get(r, c)) {
        col_adj[c].push_back(r + 1);
        row_adj[r].push_back(c + 1);
      }
    }
  }
  std::size_t max_col = 0;
  std::size_t max_row = 0;
  for (const auto& a : col_adj) max_col = std::max(max_col, a.size());
  for (const auto& a : row_adj) max_row = std::max(max_row, a.size());

  std::ostringstream out;
  auto emit_list = [&out](const std::vector<std::size_t>& values, std::size_t pad_to) {
    for (std::size_t i = 0; i < pad_to; ++i) out << (i ? " " : "") << (i < values.size() ? values[i] : 0);
    out << '\n';
  };
  out << n << ' ' << m << '\n' << max_col << ' ' << max_row << '\n';
  for (std::size_t c = 0; c < n; ++c) out << (c ? " " : "") << col_adj[c].size();
  out << '\n';
  for (std::size_t r = 0; r < m; ++r) out << (r ? " " : "") << row_adj[r].size();
  out << '\n';
  for (const auto& a : col_adj) emit_list(a, max_col);
  for (const auto& a : row_adj) emit_list(a, max_row);
  return out.str();
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  long next(const char* what) {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(line_, 0, std::string("unexpected end of input reading ") + what);
    const std::size_t col = pos_ - line_start_ + 1;
    std::size_t end = pos_;
    while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end]))) ++end;
    const std::string token(text_.substr(pos_, end - pos_));
    pos_ = end;
    try {
      std::size_t used = 0;
      const long v = std::stol(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return v;
    } catch (const std::exception&) {
      throw ParseError(line_, col, std::string("expected integer ") + what + ", found '" + token + "'");
    }
  }

  std::size_t line() const { return line_; }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

BinaryMatrix parse_alist(std::string_view text) {
  Reader in(text);
  const long n = in.next("column count");
  const long m = in.next("row count");
  if (n < 1 || m < 1) throw ParseError(1, 0, "alist dimensions must be positive");
  const long max_col = in.next("max column degree");
  const long max_row = in.next("max row degree");
  if (max_col < 0 || max_row < 0 || max_col > m || max_row > n) throw ParseError(2, 0, "invalid max degrees");

  std::vector<long> col_deg(static_cast<std::size_t>(n));
  std::vector<long> row_deg(static_cast<std::size_t>(m));
  for (auto& d : col_deg) {
    d = in.next("column degree");
    if (d < 0 || d > max_col) throw ParseError(in.line(), 0, "column degree exceeds declared maximum");
  }
  for (auto& d : row_deg) {
    d = in.next("row degree");
    if (d < 0 || d > max_row) throw ParseError(in.line(), 0, "row degree exceeds declared maximum");
  }

  BinaryMatrix h(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (long c = 0; c < n; ++c) {
    for (long k = 0; k < max_col; ++k) {
      const long r = in.next("row index");
      if (k < col_deg[static_cast<std::size_t>(c)]) {
        if (r < 1 || r > m) throw ParseError(in.line(), 0, "row index out of range");
        if (h.get(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c))) {
          throw ParseError(in.line(), 0, "repeated row index in column list");
        }
        h.set(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c));
      } else if (r != 0) {
        throw ParseError(in.line(), 0, "column list padding must be 0");
      }
    }
  }
  for (long r = 0; r < m; ++r) {
    long found = 0;
    for (long k = 0; k < max_row; ++k) {
      const long c = in.next("column index");
      if (k < row_deg[static_cast<std::size_t>(r)]) {
        if (c < 1 || c > n) throw ParseError(in.line(), 0, "column index out of range");
        if (!h.get(static_cast<std::size_t>(r), static_cast<std::size_t>(c - 1))) {
          throw ParseError(in.line(), 0, "row list disagrees with column lists");
        }
        ++found;
      } else if (c != 0) {
        throw ParseError(in.line(), 0, "row list padding must be 0");
      }
    }
    if (found != static_cast<long>(h.row_weight(static_cast<std::size_t>(r)))) {
      throw ParseError(in.line(), 0, "row degree disagrees with column lists");
    }
  }
  return h;
}

}  // namespace qcising
