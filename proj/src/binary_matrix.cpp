#include "qcising/binary_matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qcising {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

void require_index(std::size_t i, std::size_t bound, const char* what) {
  if (i >= bound) throw std::out_of_range(std::string(what) + " index out of range");
}

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return v;
}

bool BitVector::get(std::size_t i) const {
  require_index(i, size_, "bit");
  return (words_[i >> 6] >> (i & 63)) & 1U;
}

void BitVector::set(std::size_t i, bool value) {
  require_index(i, size_, "bit");
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) {
  require_index(i, size_, "bit");
  words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
}

std::size_t BitVector::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

bool BitVector::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for(cols)), words_(rows * words_for(cols), 0) {}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::string>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BinaryMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged binary matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] == '1') {
        m.set(r, c);
      } else if (rows[r][c] != '0') {
        throw std::invalid_argument("binary matrix rows may only contain '0' and '1'");
      }
    }
  }
  return m;
}

bool BinaryMatrix::get(std::size_t r, std::size_t c) const {
  require_index(r, rows_, "row");
  require_index(c, cols_, "column");
  return (words_[word_index(r, c)] >> (c & 63)) & 1U;
}

void BinaryMatrix::set(std::size_t r, std::size_t c, bool value) {
  require_index(r, rows_, "row");
  require_index(c, cols_, "column");
  const std::uint64_t mask = std::uint64_t{1} << (c & 63);
  if (value) {
    words_[word_index(r, c)] |= mask;
  } else {
    words_[word_index(r, c)] &= ~mask;
  }
}

void BinaryMatrix::flip(std::size_t r, std::size_t c) {
  require_index(r, rows_, "row");
  require_index(c, cols_, "column");
  words_[word_index(r, c)] ^= std::uint64_t{1} << (c & 63);
}

std::span<const std::uint64_t> BinaryMatrix::row_words(std::size_t r) const {
  require_index(r, rows_, "row");
  return {words_.data() + r * words_per_row_, words_per_row_};
}

BitVector BinaryMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (get(r, c)) v.set(c);
  }
  return v;
}

BitVector BinaryMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.set(r);
  }
  return v;
}

std::size_t BinaryMatrix::row_weight(std::size_t r) const {
  std::size_t w = 0;
  for (auto word : row_words(r)) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

std::size_t BinaryMatrix::col_weight(std::size_t c) const {
  require_index(c, cols_, "column");
  std::size_t w = 0;
  for (std::size_t r = 0; r < rows_; ++r) w += get(r, c) ? 1 : 0;
  return w;
}

std::size_t BinaryMatrix::weight() const {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

BitVector BinaryMatrix::multiply(const BitVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  BitVector out(rows_);
  const auto xw = x.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto rw = row_words(r);
    unsigned parity = 0;
    for (std::size_t w = 0; w < words_per_row_; ++w) parity ^= static_cast<unsigned>(std::popcount(rw[w] & xw[w]));
    if (parity & 1U) out.set(r);
  }
  return out;
}

BinaryMatrix BinaryMatrix::multiply(const BinaryMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix-matrix size mismatch");
  BinaryMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      for (std::size_t w = 0; w < out.words_per_row_; ++w) {
        out.words_[r * out.words_per_row_ + w] ^= other.words_[k * other.words_per_row_ + w];
      }
    }
  }
  return out;
}

BinaryMatrix BinaryMatrix::transpose() const {
  BinaryMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r);
    }
  }
  return t;
}

BinaryMatrix BinaryMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw std::out_of_range("block out of range");
  BinaryMatrix b(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) {
      if (get(r0 + r, c0 + c)) b.set(r, c);
    }
  }
  return b;
}

void BinaryMatrix::xor_block(std::size_t r0, std::size_t c0, const BinaryMatrix& src) {
  if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) throw std::out_of_range("block out of range");
  for (std::size_t r = 0; r < src.rows_; ++r) {
    for (std::size_t c = 0; c < src.cols_; ++c) {
      if (src.get(r, c)) flip(r0 + r, c0 + c);
    }
  }
}

void BinaryMatrix::assign_block(std::size_t r0, std::size_t c0, const BinaryMatrix& src) {
  if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) throw std::out_of_range("block out of range");
  for (std::size_t r = 0; r < src.rows_; ++r) {
    for (std::size_t c = 0; c < src.cols_; ++c) set(r0 + r, c0 + c, src.get(r, c));
  }
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(std::vector<std::uint64_t>& words, std::size_t rows, std::size_t cols,
                              std::size_t wpr) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < rows; ++c) {
    const std::size_t w = c >> 6;
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    std::size_t found = rows;
    for (std::size_t r = prow; r < rows; ++r) {
      if (words[r * wpr + w] & mask) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    if (found != prow) {
      std::swap_ranges(words.begin() + static_cast<std::ptrdiff_t>(found * wpr),
                       words.begin() + static_cast<std::ptrdiff_t>((found + 1) * wpr),
                       words.begin() + static_cast<std::ptrdiff_t>(prow * wpr));
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != prow && (words[r * wpr + w] & mask)) {
        for (std::size_t k = 0; k < wpr; ++k) words[r * wpr + k] ^= words[prow * wpr + k];
      }
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace

std::size_t BinaryMatrix::rank() const {
  auto work = words_;
  return rref(work, rows_, cols_, words_per_row_).size();
}

std::vector<BitVector> BinaryMatrix::nullspace_basis() const {
  auto work = words_;
  const auto pivots = rref(work, rows_, cols_, words_per_row_);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    BitVector v(cols_);
    v.set(free);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if ((work[i * words_per_row_ + (free >> 6)] >> (free & 63)) & 1U) v.set(pivots[i]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::string BinaryMatrix::to_string() const {
  std::string s;
  s.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

}  // namespace qcising
