#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcising {

/// Packed GF(2) vector. Bits beyond size() in the last word are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  /// Parses a string of '0'/'1' characters.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);

  std::size_t weight() const noexcept;
  bool none() const noexcept;
  std::vector<std::size_t> support() const;

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  bool operator==(const BitVector& other) const = default;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense row-major GF(2) matrix with bit-packed rows.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols);

  static BinaryMatrix identity(std::size_t n);
  /// Rows of '0'/'1' strings, all of equal length.
  static BinaryMatrix from_rows(const std::vector<std::string>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value = true);
  void flip(std::size_t r, std::size_t c);

  std::span<const std::uint64_t> row_words(std::size_t r) const;
  BitVector row(std::size_t r) const;
  BitVector column(std::size_t c) const;

  std::size_t row_weight(std::size_t r) const;
  std::size_t col_weight(std::size_t c) const;
  std::size_t weight() const;

  /// H * x over GF(2); x.size() must equal cols().
  BitVector multiply(const BitVector& x) const;
  BinaryMatrix multiply(const BinaryMatrix& other) const;
  BinaryMatrix transpose() const;

  BinaryMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  /// XORs `src` into this matrix with its top-left corner at (r0, c0).
  void xor_block(std::size_t r0, std::size_t c0, const BinaryMatrix& src);
  void assign_block(std::size_t r0, std::size_t c0, const BinaryMatrix& src);

  std::size_t rank() const;
  /// Basis of {x : Hx = 0}, one BitVector per free column of the reduced echelon form.
  std::vector<BitVector> nullspace_basis() const;

  bool operator==(const BinaryMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t word_index(std::size_t r, std::size_t c) const { return r * words_per_row_ + (c >> 6); }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace qcising
