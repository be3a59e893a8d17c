#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcising {

/// Dense row-major real matrix.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  static RealMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static RealMatrix identity(std::size_t n);

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  bool square() const { return rows == cols; }
};

/// Comma-separated rows of numbers; blank lines and '#' lines are skipped.
RealMatrix parse_matrix_csv(std::string_view text);

inline constexpr std::size_t kBruteforcePermanentMax = 9;
inline constexpr std::size_t kRyserPermanentMax = 20;

/// Sum over all permutations. Requires a square, finite, non-negative matrix.
double permanent_bruteforce(const RealMatrix& a);
/// Ryser inclusion-exclusion in Gray-code order, reduced in fixed chunks.
double permanent_ryser(const RealMatrix& a, unsigned threads = 1);

struct BetheOptions {
  double damping = 0.5;  // new = damping * computed + (1 - damping) * old
  double tol = 1e-8;     // on the max |log| change of any message
  std::size_t max_iter = 1000;
  double floor = 1e-12;  // replaces zero entries
};

struct BetheResult {
  double value = 0.0;      // exp(-F_Bethe)
  double log_value = 0.0;  // -F_Bethe
  bool converged = false;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;  // one entry per iteration
  RealMatrix beliefs;                    // gamma_ij, doubly stochastic at a fixed point
};

/// Sum-product on the permanent factor graph. Row-to-column messages
///   rho_ij = 1 / sum_{k != j} a_ik kappa_ik,  kappa_ij = 1 / sum_{l != i} a_lj rho_lj,
/// beliefs gamma_ij = a rho kappa / (1 + a rho kappa) and
///   F_Bethe = -sum gamma log a + sum gamma log gamma - sum (1 - gamma) log(1 - gamma).
/// Not converging within max_iter returns the last iterate with converged = false.
BetheResult bethe_permanent(const RealMatrix& a, const BetheOptions& options = {});

/// "iteration,residual"
std::string bethe_residual_csv(const BetheResult& result);

/// log |det W| by LU with partial pivoting; throws NumericError when W is singular.
double log_abs_det(const RealMatrix& w);
/// Z = 1 / |det W|.
double det_normalization(const RealMatrix& w);

/// log sum exp(-E_i), summed after sorting so the result ignores input order.
double log_partition_from_energies(std::vector<double> energies);
double partition_from_energies(std::vector<double> energies);

/// Visible/hidden/input weights of a conditional RBM.
struct RbmParams {
  RealMatrix w_vh;  // |v| x |h|
  RealMatrix w_vx;  // |v| x |x|
  std::vector<double> b_v;
  std::vector<double> b_h;
  /// |h| x |x|. When present it replaces the row-j product W^{vh}_{j.} x of the
  /// marginal-energy formula, which otherwise needs |x| = |h| <= |v|.
  std::optional<RealMatrix> w_hx;
};

/// E(v, x) = sum_j log(1 + exp(v^T W^{vh}_{.j} + W^{vh}_{j.} x + b^h_j)) + v^T W^{vx} x + v^T b^v.
double rbm_marginal_energy(const std::vector<std::uint8_t>& v, const std::vector<std::uint8_t>& x, const RbmParams& theta);

}  // namespace qcising
