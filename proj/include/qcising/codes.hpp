#pragma once

#include <cstddef>
#include <vector>

#include "qcising/binary_matrix.hpp"
#include "qcising/circulant.hpp"

namespace qcising {

/// Replaces every exponent entry by its L x L CPM (mL x nL result).
BinaryMatrix lift(const ExponentMatrix& e);

/// Protograph mask: 1 where the exponent entry is not the zero block.
BinaryMatrix base_graph(const ExponentMatrix& e);
/// Same for a MET matrix: 1 where the cell is non-empty.
BinaryMatrix base_graph(const MetExponentMatrix& e);

/// Each block is the XOR of the CPMs in its cell. A repeated shift inside one cell
/// would cancel over GF(2) and is rejected with std::domain_error.
BinaryMatrix lift_met(const MetExponentMatrix& e);

/// Tail-biting spatially coupled construction.
///
/// `shifts` is the C x W CPM-shifts matrix B (cells may carry several shifts; none may
/// be empty). `offsets` is D = (d_0, ..., d_{C-1}) with d_0 = 0, strictly increasing,
/// every d_i < W.
struct ScParams {
  std::size_t coupling_width;  // W
  std::size_t checks_per_block;  // C
  int circulant_size;  // N
  std::size_t multiple;  // L
  MetExponentMatrix shifts;
  std::vector<std::size_t> offsets;
};

/// d_i = i * W / C; requires C to divide W.
std::vector<std::size_t> default_offsets(std::size_t coupling_width, std::size_t checks_per_block);

/// Throws std::domain_error describing the first violated constraint.
void validate(const ScParams& p);

/// CL x WL block grid. Block row j (group g = j / C, member c = j % C) carries
/// B[c][i mod W] at the W block columns i = g*W + d_c, ..., g*W + d_c + W - 1, taken
/// mod WL. Every block row holds W circulants and every block column holds C.
MetExponentMatrix sc_construct(const ScParams& p);

/// Repeat-accumulate code H = [H1 | H2] with H2 the t x t block lower-bidiagonal
/// matrix of identity circulants (identity on the diagonal and the sub-diagonal).
struct RaCode {
  ExponentMatrix systematic;  // H1, t block rows
  std::size_t parity_blocks;  // t
};

BinaryMatrix ra_parity_part(std::size_t parity_blocks, int circulant_size);
BinaryMatrix ra_build(const RaCode& code);
std::size_t ra_message_length(const RaCode& code);

/// Systematic codeword [message | parity] with parity from forward accumulation:
/// p_0 = s_0, p_i = s_i + p_{i-1}, where s = H1 * message blockwise.
BitVector ra_encode(const RaCode& code, const BitVector& message);

/// One-row exponent matrix of chord distances on a ring of n nodes.
ExponentMatrix chord_cage_exponent(int ring_size, const std::vector<int>& offsets);
/// Stacked chord rows (each row validated the same way).
ExponentMatrix chord_cage_exponent(int ring_size, const std::vector<std::vector<int>>& offset_rows);

}  // namespace qcising
