#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcising/binary_matrix.hpp"

namespace qcising {

/// Biases b and strictly upper-triangular weights W of an N-unit Boltzmann machine.
struct BoltzmannParams {
  std::size_t n = 0;
  std::vector<double> bias;     // length n
  std::vector<double> weights;  // row-major n x n

  static BoltzmannParams zero(std::size_t n);

  double w(std::size_t i, std::size_t j) const { return weights[i * n + j]; }
  /// Requires i < j.
  void set_weight(std::size_t i, std::size_t j, double value);
  /// Throws std::domain_error on a shape mismatch or a non-zero entry with i >= j.
  void validate() const;
};

/// Unit values in {0, 1}.
using BitConfig = std::vector<std::uint8_t>;
/// Spin values in {-1, +1}.
using SpinConfig = std::vector<int>;

/// Configuration whose unit i is bit i of `index`.
BitConfig config_from_index(std::uint64_t index, std::size_t n);

/// E = -b^T x - x^T W x.
double bm_energy(const BoltzmannParams& theta, std::span<const std::uint8_t> x);

struct EnumerationOptions {
  std::size_t guard = 24;  // largest N enumerated
  unsigned threads = 1;    // 0 picks the hardware concurrency
};

/// log Z with Z = sum over all 2^N configurations of exp(-E). Throws ResourceError past the guard.
double bm_log_partition(const BoltzmannParams& theta, const EnumerationOptions& options = {});
double bm_partition_exact(const BoltzmannParams& theta, const EnumerationOptions& options = {});

/// exp(-E(x)) / Z.
double bm_prob(const BoltzmannParams& theta, std::span<const std::uint8_t> x, const EnumerationOptions& options = {});

/// P(x_S = values) summed over the remaining units.
double bm_marginal(const BoltzmannParams& theta, const std::vector<std::size_t>& units,
                   const BitConfig& values, const EnumerationOptions& options = {});

/// P(x_Q = query_values | x_G = given_values), enumerating only the free units.
double bm_conditional(const BoltzmannParams& theta, const std::vector<std::size_t>& query_units,
                      const BitConfig& query_values, const std::vector<std::size_t>& given_units,
                      const BitConfig& given_values, const EnumerationOptions& options = {});

/// Text form: line 1 "N", line 2 the N biases, then one "i j w" triple per line (0-based, i < j).
BoltzmannParams parse_theta(std::string_view text);
std::string format_theta(const BoltzmannParams& theta);

struct IsingSystem {
  std::size_t n = 0;
  BinaryMatrix connectivity;     // symmetric n x n
  std::vector<double> coupling;  // row-major n x n, symmetric on the support of connectivity

  double j(std::size_t a, std::size_t b) const { return coupling[a * n + b]; }
  void validate() const;
};

/// E(sigma) = sum over unordered pairs i < j with C_ij = 1 of J_ij sigma_i sigma_j.
double ising_energy(const IsingSystem& system, std::span<const int> sigma);

/// Number of parity checks of H violated by x.
std::size_t syndrome_energy(const BinaryMatrix& h, const BitVector& x);

struct MinimaReport {
  bool pass = true;
  bool exhaustive = true;                     // false when established by the linearity certificate
  std::uint64_t codewords = 0;                // codewords covered
  std::vector<std::size_t> nonzero_syndrome;  // Gray-order codeword (or basis) indices with energy > 0
  std::vector<std::size_t> zero_cost_bits;    // bit flips that leave some codeword at energy 0
  std::vector<std::size_t> neighbor_energy;   // energy after flipping bit j of a codeword
};

inline constexpr std::size_t kDefaultMinimaGuard = 16;

/// Enumerates every codeword and every single-bit neighbour. Throws ResourceError past the guard.
MinimaReport codeword_minima_check(const BinaryMatrix& h, std::size_t guard = kDefaultMinimaGuard);

/// Same verdict without enumeration: syndrome energy is linear over GF(2), so every
/// codeword sits at 0 once the basis does, and flipping bit j of any codeword costs
/// syndrome_energy(e_j), the weight of column j.
MinimaReport codeword_minima_certificate(const BinaryMatrix& h);

}  // namespace qcising
