#pragma once

// Circulant permutation matrix (CPM) algebra over the shift alphabet {-1, 0, ..., L-1}.
//
// P^k is the L x L identity cyclically shifted right by k: row i has its single
// one in column (i + k) mod L. Shift -1 is the canonical zero block.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qcising/binary_matrix.hpp"

namespace qcising {

inline constexpr int kZeroBlock = -1;

bool is_valid_shift(int shift, int circulant_size) noexcept;

/// Throws std::domain_error if `shift` is outside {-1, ..., L-1} or L < 1.
void require_valid_shift(int shift, int circulant_size);

BinaryMatrix cpm_from_shift(int shift, int circulant_size);

/// Shift of P^a * P^b; the zero block absorbs.
int compose_shifts(int a, int b, int circulant_size);

struct ShiftViolation {
  std::size_t row;
  std::size_t col;
  int value;
};

/// Every entry of `grid` outside {-1, ..., L-1}, in row-major order. Ragged rows and
/// L < 1 are reported as std::invalid_argument, not as violations.
std::vector<ShiftViolation> validate_exponent(int circulant_size, const std::vector<std::vector<int>>& grid);

class ExponentMatrix {
 public:
  /// Validates every entry; throws std::domain_error naming the first bad cell.
  ExponentMatrix(int circulant_size, const std::vector<std::vector<int>>& grid);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int circulant_size() const noexcept { return circulant_size_; }

  int at(std::size_t r, std::size_t c) const;
  std::span<const int> row(std::size_t r) const;
  std::vector<std::vector<int>> to_grid() const;

  bool operator==(const ExponentMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int circulant_size_ = 1;
  std::vector<int> entries_;
};

/// Exponent matrix whose cells are multisets of shifts (circulant weight = cell size).
/// An empty cell is the zero block. Cells are kept sorted.
class MetExponentMatrix {
 public:
  using Cell = std::vector<int>;

  MetExponentMatrix(int circulant_size, std::vector<std::vector<Cell>> grid);

  static MetExponentMatrix from_exponent(const ExponentMatrix& e);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int circulant_size() const noexcept { return circulant_size_; }

  const Cell& at(std::size_t r, std::size_t c) const;
  bool is_single_weight() const;
  /// Only valid when every cell has weight <= 1.
  ExponentMatrix to_exponent() const;

  bool operator==(const MetExponentMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int circulant_size_ = 1;
  std::vector<Cell> cells_;
};

}  // namespace qcising
