#include "qcising/codes.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcising {

namespace {

void place_cpm(BinaryMatrix& h, std::size_t r0, std::size_t c0, int shift, int L) {
  if (shift == kZeroBlock) return;
  const auto n = static_cast<std::size_t>(L);
  for (std::size_t i = 0; i < n; ++i) h.flip(r0 + i, c0 + (i + static_cast<std::size_t>(shift)) % n);
}

}  // namespace

BinaryMatrix lift(const ExponentMatrix& e) {
  const auto L = static_cast<std::size_t>(e.circulant_size());
  BinaryMatrix h(e.rows() * L, e.cols() * L);
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) place_cpm(h, r * L, c * L, e.at(r, c), e.circulant_size());
  }
  return h;
}

BinaryMatrix base_graph(const ExponentMatrix& e) {
  BinaryMatrix m(e.rows(), e.cols());
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) m.set(r, c, e.at(r, c) != kZeroBlock);
  }
  return m;
}

BinaryMatrix base_graph(const MetExponentMatrix& e) {
  BinaryMatrix m(e.rows(), e.cols());
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) m.set(r, c, !e.at(r, c).empty());
  }
  return m;
}

BinaryMatrix lift_met(const MetExponentMatrix& e) {
  const auto L = static_cast<std::size_t>(e.circulant_size());
  BinaryMatrix h(e.rows() * L, e.cols() * L);
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      const auto& cell = e.at(r, c);
      if (std::adjacent_find(cell.begin(), cell.end()) != cell.end()) {
        std::ostringstream msg;
        msg << "cell (" << r << ", " << c << ") repeats a shift; the copies would cancel over GF(2)";
        throw std::domain_error(msg.str());
      }
      for (int s : cell) place_cpm(h, r * L, c * L, s, e.circulant_size());
    }
  }
  return h;
}

std::vector<std::size_t> default_offsets(std::size_t coupling_width, std::size_t checks_per_block) {
  if (checks_per_block == 0 || coupling_width % checks_per_block != 0) {
    throw std::domain_error("default offsets need C to divide W");
  }
  std::vector<std::size_t> d(checks_per_block);
  for (std::size_t i = 0; i < checks_per_block; ++i) d[i] = i * coupling_width / checks_per_block;
  return d;
}

void validate(const ScParams& p) {
  const std::size_t W = p.coupling_width;
  const std::size_t C = p.checks_per_block;
  if (W == 0 || C == 0 || p.multiple == 0) throw std::domain_error("W, C and L must be positive");
  if (p.shifts.rows() != C || p.shifts.cols() != W) {
    throw std::domain_error("CPM-shifts matrix B must be C x W");
  }
  if (p.shifts.circulant_size() != p.circulant_size) {
    throw std::domain_error("CPM-shifts matrix circulant size differs from N");
  }
  for (std::size_t r = 0; r < C; ++r) {
    for (std::size_t c = 0; c < W; ++c) {
      if (p.shifts.at(r, c).empty()) throw std::domain_error("CPM-shifts matrix B may not contain zero blocks");
    }
  }
  if (p.offsets.size() != C) throw std::domain_error("offset vector D must have C entries");
  if (p.offsets[0] != 0) throw std::domain_error("offset vector D must start with d_0 = 0");
  for (std::size_t i = 0; i < C; ++i) {
    if (p.offsets[i] >= W) throw std::domain_error("every offset d_i must be < W");
    if (i > 0 && p.offsets[i] <= p.offsets[i - 1]) throw std::domain_error("offset vector D must be strictly increasing");
  }
}

MetExponentMatrix sc_construct(const ScParams& p) {
  validate(p);
  const std::size_t W = p.coupling_width;
  const std::size_t C = p.checks_per_block;
  const std::size_t rows = C * p.multiple;
  const std::size_t cols = W * p.multiple;
  std::vector<std::vector<MetExponentMatrix::Cell>> grid(rows, std::vector<MetExponentMatrix::Cell>(cols));
  for (std::size_t j = 0; j < rows; ++j) {
    const std::size_t member = j % C;
    const std::size_t anchor = (j / C) * W + p.offsets[member];
    for (std::size_t k = 0; k < W; ++k) {
      const std::size_t i = (anchor + k) % cols;
      grid[j][i] = p.shifts.at(member, i % W);
    }
  }
  return MetExponentMatrix(p.circulant_size, std::move(grid));
}

BinaryMatrix ra_parity_part(std::size_t parity_blocks, int circulant_size) {
  if (parity_blocks == 0) throw std::domain_error("RA code needs at least one parity block");
  if (circulant_size < 1) throw std::domain_error("circulant size must be >= 1");
  const auto L = static_cast<std::size_t>(circulant_size);
  BinaryMatrix h2(parity_blocks * L, parity_blocks * L);
  for (std::size_t b = 0; b < parity_blocks; ++b) {
    place_cpm(h2, b * L, b * L, 0, circulant_size);
    if (b > 0) place_cpm(h2, b * L, (b - 1) * L, 0, circulant_size);
  }
  return h2;
}

namespace {

void check_ra(const RaCode& code) {
  if (code.parity_blocks == 0) throw std::domain_error("RA code needs at least one parity block");
  if (code.systematic.rows() != code.parity_blocks) {
    std::ostringstream msg;
    msg << "H1 has " << code.systematic.rows() << " block rows but H2 has " << code.parity_blocks;
    throw std::domain_error(msg.str());
  }
}

}  // namespace

BinaryMatrix ra_build(const RaCode& code) {
  check_ra(code);
  const auto h1 = lift(code.systematic);
  const auto h2 = ra_parity_part(code.parity_blocks, code.systematic.circulant_size());
  BinaryMatrix h(h1.rows(), h1.cols() + h2.cols());
  h.assign_block(0, 0, h1);
  h.assign_block(0, h1.cols(), h2);
  return h;
}

std::size_t ra_message_length(const RaCode& code) {
  return code.systematic.cols() * static_cast<std::size_t>(code.systematic.circulant_size());
}

BitVector ra_encode(const RaCode& code, const BitVector& message) {
  check_ra(code);
  const std::size_t k = ra_message_length(code);
  if (message.size() != k) {
    std::ostringstream msg;
    msg << "message length " << message.size() << " does not match H1 width " << k;
    throw std::domain_error(msg.str());
  }
  const auto L = static_cast<std::size_t>(code.systematic.circulant_size());
  const BitVector syndrome = lift(code.systematic).multiply(message);

  BitVector codeword(k + code.parity_blocks * L);
  for (auto i : message.support()) codeword.set(i);
  std::vector<bool> prev(L, false);
  for (std::size_t b = 0; b < code.parity_blocks; ++b) {
    for (std::size_t i = 0; i < L; ++i) {
      const bool p = syndrome.get(b * L + i) != prev[i];
      prev[i] = p;
      if (p) codeword.set(k + b * L + i);
    }
  }
  return codeword;
}

ExponentMatrix chord_cage_exponent(int ring_size, const std::vector<int>& offsets) {
  return chord_cage_exponent(ring_size, std::vector<std::vector<int>>{offsets});
}

ExponentMatrix chord_cage_exponent(int ring_size, const std::vector<std::vector<int>>& offset_rows) {
  if (ring_size < 1) throw std::domain_error("ring size must be >= 1");
  if (offset_rows.empty() || offset_rows.front().empty()) throw std::domain_error("at least one chord offset is required");
  for (const auto& row : offset_rows) {
    std::set<int> seen;
    for (int d : row) {
      if (d < 0 || d >= ring_size) {
        throw std::domain_error("chord offset " + std::to_string(d) + " is outside [0, " + std::to_string(ring_size) + ")");
      }
      if (!seen.insert(d).second) throw std::domain_error("duplicate chord offset " + std::to_string(d));
    }
  }
  return ExponentMatrix(ring_size, offset_rows);
}

}  // namespace qcising
