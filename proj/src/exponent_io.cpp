#include "qcising/exponent_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qcising/errors.hpp"

namespace qcising {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::string_view text;
  std::size_t number;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

// Non-blank, non-comment lines.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') out.push_back({line, number});
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

long parse_int(std::string_view s, std::size_t line, std::size_t column) {
  long value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(line, column, "expected an integer, found '" + std::string(s) + "'");
  }
  return value;
}

struct Header {
  std::size_t rows;
  std::size_t cols;
  int circulant_size;
};

Header parse_header(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(1, 0, "empty input; expected header 'm n L'");
  const auto toks = tokenize(lines[0].text);
  if (toks.size() != 3) throw ParseError(lines[0].number, 0, "header must hold exactly three integers 'm n L'");
  const long m = parse_int(toks[0].text, lines[0].number, toks[0].column);
  const long n = parse_int(toks[1].text, lines[0].number, toks[1].column);
  const long L = parse_int(toks[2].text, lines[0].number, toks[2].column);
  if (m < 1) throw ParseError(lines[0].number, toks[0].column, "row count must be >= 1");
  if (n < 1) throw ParseError(lines[0].number, toks[1].column, "column count must be >= 1");
  if (L < 1 || L > (1L << 24)) throw ParseError(lines[0].number, toks[2].column, "circulant size out of range");
  if (lines.size() != static_cast<std::size_t>(m) + 1) {
    const std::size_t where = lines.size() > static_cast<std::size_t>(m) + 1 ? lines[m + 1].number : lines.back().number;
    throw ParseError(where, 0,
                     "expected " + std::to_string(m) + " matrix rows, found " + std::to_string(lines.size() - 1));
  }
  return {static_cast<std::size_t>(m), static_cast<std::size_t>(n), static_cast<int>(L)};
}

bool is_zero_token(std::string_view t) { return t == "-" || t == "-1"; }

int parse_shift(std::string_view t, int L, std::size_t line, std::size_t column, bool allow_zero_block) {
  if (is_zero_token(t)) {
    if (!allow_zero_block) throw ParseError(line, column, "zero block is not allowed inside a shift list");
    return kZeroBlock;
  }
  const long v = parse_int(t, line, column);
  if (v < 0 || v >= L) {
    throw ParseError(line, column, "shift " + std::string(t) + " is outside {-1, ..., " + std::to_string(L - 1) + "}");
  }
  return static_cast<int>(v);
}

}  // namespace

ExponentMatrix parse_exponent(std::string_view text) {
  const auto lines = content_lines(text);
  const Header h = parse_header(lines);
  std::vector<std::vector<int>> grid(h.rows);
  for (std::size_t r = 0; r < h.rows; ++r) {
    const Line& line = lines[r + 1];
    const auto toks = tokenize(line.text);
    if (toks.size() != h.cols) {
      throw ParseError(line.number, 0,
                       "expected " + std::to_string(h.cols) + " entries, found " + std::to_string(toks.size()));
    }
    for (const auto& t : toks) {
      if (t.text.find(',') != std::string_view::npos) {
        throw ParseError(line.number, t.column, "multi-shift cell in a plain exponent matrix (use MET input)");
      }
      grid[r].push_back(parse_shift(t.text, h.circulant_size, line.number, t.column, true));
    }
  }
  return ExponentMatrix(h.circulant_size, grid);
}

MetExponentMatrix parse_met_exponent(std::string_view text) {
  const auto lines = content_lines(text);
  const Header h = parse_header(lines);
  std::vector<std::vector<MetExponentMatrix::Cell>> grid(h.rows);
  for (std::size_t r = 0; r < h.rows; ++r) {
    const Line& line = lines[r + 1];
    const auto toks = tokenize(line.text);
    if (toks.size() != h.cols) {
      throw ParseError(line.number, 0,
                       "expected " + std::to_string(h.cols) + " entries, found " + std::to_string(toks.size()));
    }
    for (const auto& t : toks) {
      MetExponentMatrix::Cell cell;
      if (!is_zero_token(t.text)) {
        std::size_t start = 0;
        while (start <= t.text.size()) {
          const std::size_t comma = t.text.find(',', start);
          const auto part = t.text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
          if (part.empty()) throw ParseError(line.number, t.column + start, "empty shift in list");
          cell.push_back(parse_shift(part, h.circulant_size, line.number, t.column + start, false));
          if (comma == std::string_view::npos) break;
          start = comma + 1;
        }
      }
      grid[r].push_back(std::move(cell));
    }
  }
  return MetExponentMatrix(h.circulant_size, std::move(grid));
}

std::vector<std::string> exponent_comments(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] != '#') continue;
    auto body = line.substr(first + 1);
    if (!body.empty() && body.front() == ' ') body.erase(0, 1);
    if (!body.empty() && body.back() == '\r') body.pop_back();
    out.push_back(body);
  }
  return out;
}

std::string format_exponent(const ExponentMatrix& e, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  out << e.rows() << ' ' << e.cols() << ' ' << e.circulant_size() << '\n';
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) out << (c ? " " : "") << e.at(r, c);
    out << '\n';
  }
  return out.str();
}

std::string format_met_exponent(const MetExponentMatrix& e, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  out << e.rows() << ' ' << e.cols() << ' ' << e.circulant_size() << '\n';
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      if (c) out << ' ';
      const auto& cell = e.at(r, c);
      if (cell.empty()) {
        out << kZeroBlock;
        continue;
      }
      for (std::size_t k = 0; k < cell.size(); ++k) out << (k ? "," : "") << cell[k];
    }
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace qcising
