#include "qcising/circulant.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qcising {

bool is_valid_shift(int shift, int circulant_size) noexcept {
  return circulant_size >= 1 && shift >= kZeroBlock && shift < circulant_size;
}

void require_valid_shift(int shift, int circulant_size) {
  if (circulant_size < 1) throw std::domain_error("circulant size must be >= 1");
  if (!is_valid_shift(shift, circulant_size)) {
    std::ostringstream msg;
    msg << "shift " << shift << " is outside {-1, ..., " << circulant_size - 1 << "}";
    throw std::domain_error(msg.str());
  }
}

BinaryMatrix cpm_from_shift(int shift, int circulant_size) {
  require_valid_shift(shift, circulant_size);
  const auto n = static_cast<std::size_t>(circulant_size);
  BinaryMatrix p(n, n);
  if (shift == kZeroBlock) return p;
  for (std::size_t i = 0; i < n; ++i) p.set(i, (i + static_cast<std::size_t>(shift)) % n);
  return p;
}

int compose_shifts(int a, int b, int circulant_size) {
  require_valid_shift(a, circulant_size);
  require_valid_shift(b, circulant_size);
  if (a == kZeroBlock || b == kZeroBlock) return kZeroBlock;
  return (a + b) % circulant_size;
}

std::vector<ShiftViolation> validate_exponent(int circulant_size, const std::vector<std::vector<int>>& grid) {
  if (circulant_size < 1) throw std::invalid_argument("circulant size must be >= 1");
  std::vector<ShiftViolation> out;
  const std::size_t cols = grid.empty() ? 0 : grid.front().size();
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (grid[r].size() != cols) throw std::invalid_argument("exponent matrix rows have unequal length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!is_valid_shift(grid[r][c], circulant_size)) out.push_back({r, c, grid[r][c]});
    }
  }
  return out;
}

ExponentMatrix::ExponentMatrix(int circulant_size, const std::vector<std::vector<int>>& grid)
    : rows_(grid.size()), cols_(grid.empty() ? 0 : grid.front().size()), circulant_size_(circulant_size) {
  if (rows_ == 0 || cols_ == 0) throw std::domain_error("exponent matrix must be at least 1 x 1");
  std::vector<ShiftViolation> bad;
  try {
    bad = validate_exponent(circulant_size, grid);
  } catch (const std::invalid_argument& e) {
    throw std::domain_error(e.what());
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << bad.size() << " invalid shift(s) for L=" << circulant_size << "; first at (" << bad[0].row << ", "
        << bad[0].col << ") = " << bad[0].value;
    throw std::domain_error(msg.str());
  }
  entries_.reserve(rows_ * cols_);
  for (const auto& r : grid) entries_.insert(entries_.end(), r.begin(), r.end());
}

int ExponentMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("exponent matrix index out of range");
  return entries_[r * cols_ + c];
}

std::span<const int> ExponentMatrix::row(std::size_t r) const {
  if (r >= rows_) throw std::out_of_range("exponent matrix row out of range");
  return {entries_.data() + r * cols_, cols_};
}

std::vector<std::vector<int>> ExponentMatrix::to_grid() const {
  std::vector<std::vector<int>> g(rows_);
  for (std::size_t r = 0; r < rows_; ++r) g[r].assign(row(r).begin(), row(r).end());
  return g;
}

MetExponentMatrix::MetExponentMatrix(int circulant_size, std::vector<std::vector<Cell>> grid)
    : rows_(grid.size()), cols_(grid.empty() ? 0 : grid.front().size()), circulant_size_(circulant_size) {
  if (circulant_size < 1) throw std::domain_error("circulant size must be >= 1");
  cells_.reserve(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (grid[r].size() != cols_) throw std::domain_error("MET exponent matrix rows have unequal length");
    for (std::size_t c = 0; c < cols_; ++c) {
      Cell cell = std::move(grid[r][c]);
      for (int s : cell) {
        if (s < 0 || s >= circulant_size) {
          std::ostringstream msg;
          msg << "MET cell (" << r << ", " << c << ") holds shift " << s << " outside {0, ..., " << circulant_size - 1
              << "}";
          throw std::domain_error(msg.str());
        }
      }
      std::sort(cell.begin(), cell.end());
      cells_.push_back(std::move(cell));
    }
  }
}

MetExponentMatrix MetExponentMatrix::from_exponent(const ExponentMatrix& e) {
  std::vector<std::vector<Cell>> grid(e.rows(), std::vector<Cell>(e.cols()));
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      if (e.at(r, c) != kZeroBlock) grid[r][c] = {e.at(r, c)};
    }
  }
  return MetExponentMatrix(e.circulant_size(), std::move(grid));
}

const MetExponentMatrix::Cell& MetExponentMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("MET exponent matrix index out of range");
  return cells_[r * cols_ + c];
}

bool MetExponentMatrix::is_single_weight() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c.size() <= 1; });
}

ExponentMatrix MetExponentMatrix::to_exponent() const {
  if (!is_single_weight()) throw std::domain_error("MET matrix has a cell of weight > 1");
  std::vector<std::vector<int>> grid(rows_, std::vector<int>(cols_, kZeroBlock));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!at(r, c).empty()) grid[r][c] = at(r, c).front();
    }
  }
  return ExponentMatrix(circulant_size_, grid);
}

}  // namespace qcising
