#include "qcising/boltzmann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qcising/errors.hpp"
#include "qcising/parallel.hpp"

namespace qcising {

BoltzmannParams BoltzmannParams::zero(std::size_t n) {
  return {n, std::vector<double>(n, 0.0), std::vector<double>(n * n, 0.0)};
}

void BoltzmannParams::set_weight(std::size_t i, std::size_t j, double value) {
  if (i >= j || j >= n) throw std::domain_error("weights are defined only for 0 <= i < j < N");
  weights[i * n + j] = value;
}

void BoltzmannParams::validate() const {
  if (bias.size() != n) throw std::domain_error("bias vector length differs from N");
  if (weights.size() != n * n) throw std::domain_error("weight matrix is not N x N");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (weights[i * n + j] != 0.0) throw std::domain_error("weight matrix must be strictly upper triangular");
    }
  }
  for (double v : bias) {
    if (!std::isfinite(v)) throw std::domain_error("bias is not finite");
  }
  for (double v : weights) {
    if (!std::isfinite(v)) throw std::domain_error("weight is not finite");
  }
}

BitConfig config_from_index(std::uint64_t index, std::size_t n) {
  BitConfig x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((index >> i) & 1U);
  return x;
}

double bm_energy(const BoltzmannParams& theta, std::span<const std::uint8_t> x) {
  theta.validate();
  if (x.size() != theta.n) throw std::domain_error("configuration length differs from N");
  double e = 0.0;
  for (std::size_t i = 0; i < theta.n; ++i) {
    if (x[i] > 1) throw std::domain_error("unit values must be 0 or 1");
    if (!x[i]) continue;
    e -= theta.bias[i];
    for (std::size_t j = i + 1; j < theta.n; ++j) {
      if (x[j]) e -= theta.w(i, j);
    }
  }
  return e;
}

namespace {

// Running sums for Z: the plain sum, a (max, scaled sum) log-sum-exp pair, and the
// largest |E| seen, which decides which of the two is reported.
struct ZAccumulator {
  double plain = 0.0;
  double lse_max = -std::numeric_limits<double>::infinity();
  double lse_sum = 0.0;
  double max_abs_energy = 0.0;

  void add(double energy) {
    plain += std::exp(-energy);
    const double v = -energy;
    if (v > lse_max) {
      lse_sum = lse_sum * std::exp(lse_max - v) + 1.0;
      lse_max = v;
    } else {
      lse_sum += std::exp(v - lse_max);
    }
    max_abs_energy = std::max(max_abs_energy, std::abs(energy));
  }

  static ZAccumulator combine(ZAccumulator a, const ZAccumulator& b) {
    a.plain += b.plain;
    if (b.lse_sum > 0.0) {
      if (a.lse_sum == 0.0 || b.lse_max > a.lse_max) {
        a.lse_sum = b.lse_sum + (a.lse_sum == 0.0 ? 0.0 : a.lse_sum * std::exp(a.lse_max - b.lse_max));
        a.lse_max = b.lse_max;
      } else {
        a.lse_sum += b.lse_sum * std::exp(b.lse_max - a.lse_max);
      }
    }
    a.max_abs_energy = std::max(a.max_abs_energy, b.max_abs_energy);
    return a;
  }

  double log_total() const {
    if (max_abs_energy > 30.0) return lse_max + std::log(lse_sum);
    return std::log(plain);
  }
};

void require_guard(std::size_t n, std::size_t guard) {
  if (n > guard) {
    throw ResourceError("enumeration-N", "exact enumeration over 2^" + std::to_string(n) +
                                             " states exceeds the guard N <= " + std::to_string(guard));
  }
}

// log of sum exp(-E(x)) over configurations agreeing with `fixed` (entries 0/1, or -1 = free).
double restricted_log_sum(const BoltzmannParams& theta, const std::vector<int>& fixed, const EnumerationOptions& options) {
  const std::size_t n = theta.n;
  std::vector<std::size_t> free_units;
  for (std::size_t i = 0; i < n; ++i) {
    if (fixed[i] < 0) free_units.push_back(i);
  }
  require_guard(free_units.size(), options.guard);

  // Symmetric coupling so the energy change of flipping unit k is -delta*(b_k + sum_j s_kj x_j).
  std::vector<double> sym(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sym[i * n + j] = sym[j * n + i] = theta.w(i, j);
  }
  auto config_at = [&](std::uint64_t gray) {
    BitConfig x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = fixed[i] > 0 ? 1 : 0;
    for (std::size_t t = 0; t < free_units.size(); ++t) x[free_units[t]] = static_cast<std::uint8_t>((gray >> t) & 1U);
    return x;
  };

  const std::uint64_t count = std::uint64_t{1} << free_units.size();
  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    ZAccumulator acc;
    BitConfig x = config_at(begin ^ (begin >> 1));
    double e = bm_energy(theta, x);
    acc.add(e);
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      const std::size_t k = free_units[static_cast<std::size_t>(std::countr_zero(i))];
      double field = theta.bias[k];
      for (std::size_t j = 0; j < n; ++j) {
        if (x[j]) field += sym[k * n + j];
      }
      const double delta = x[k] ? -1.0 : 1.0;
      x[k] ^= 1U;
      e -= delta * field;
      acc.add(e);
    }
    return acc;
  };
  return chunked_reduce(count, options.threads, ZAccumulator{}, chunk, &ZAccumulator::combine).log_total();
}

std::vector<int> fix_units(std::size_t n, std::vector<int> fixed, const std::vector<std::size_t>& units, const BitConfig& values) {
  if (units.size() != values.size()) throw std::domain_error("unit list and value list differ in length");
  for (std::size_t t = 0; t < units.size(); ++t) {
    if (units[t] >= n) throw std::domain_error("unit index out of range");
    if (values[t] > 1) throw std::domain_error("unit values must be 0 or 1");
    const int v = values[t];
    if (fixed[units[t]] >= 0 && fixed[units[t]] != v) throw std::domain_error("unit fixed to two different values");
    fixed[units[t]] = v;
  }
  return fixed;
}

}  // namespace

double bm_log_partition(const BoltzmannParams& theta, const EnumerationOptions& options) {
  theta.validate();
  require_guard(theta.n, options.guard);
  return restricted_log_sum(theta, std::vector<int>(theta.n, -1), options);
}

double bm_partition_exact(const BoltzmannParams& theta, const EnumerationOptions& options) {
  return std::exp(bm_log_partition(theta, options));
}

double bm_prob(const BoltzmannParams& theta, std::span<const std::uint8_t> x, const EnumerationOptions& options) {
  const double e = bm_energy(theta, x);
  return std::exp(-e - bm_log_partition(theta, options));
}

double bm_marginal(const BoltzmannParams& theta, const std::vector<std::size_t>& units, const BitConfig& values,
                   const EnumerationOptions& options) {
  theta.validate();
  require_guard(theta.n, options.guard);
  const auto fixed = fix_units(theta.n, std::vector<int>(theta.n, -1), units, values);
  return std::exp(restricted_log_sum(theta, fixed, options) - bm_log_partition(theta, options));
}

double bm_conditional(const BoltzmannParams& theta, const std::vector<std::size_t>& query_units,
                      const BitConfig& query_values, const std::vector<std::size_t>& given_units,
                      const BitConfig& given_values, const EnumerationOptions& options) {
  theta.validate();
  require_guard(theta.n, options.guard);
  const auto given = fix_units(theta.n, std::vector<int>(theta.n, -1), given_units, given_values);
  const auto query = fix_units(theta.n, std::vector<int>(theta.n, -1), query_units, query_values);
  std::vector<int> joint = given;
  for (std::size_t i = 0; i < theta.n; ++i) {
    if (query[i] < 0) continue;
    if (given[i] >= 0 && given[i] != query[i]) return 0.0;  // query contradicts the evidence
    joint[i] = query[i];
  }
  return std::exp(restricted_log_sum(theta, joint, options) - restricted_log_sum(theta, given, options));
}

BoltzmannParams parse_theta(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(line_no + 1, 0, "missing unit count N");
  long n = 0;
  {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> n) || n < 1 || (ls >> extra)) throw ParseError(line_no, 0, "first line must be a positive unit count N");
  }
  BoltzmannParams theta = BoltzmannParams::zero(static_cast<std::size_t>(n));
  if (!next_line()) throw ParseError(line_no + 1, 0, "missing bias line");
  {
    std::istringstream ls(line);
    for (auto& b : theta.bias) {
      if (!(ls >> b)) throw ParseError(line_no, 0, "expected " + std::to_string(n) + " biases");
    }
    std::string extra;
    if (ls >> extra) throw ParseError(line_no, 0, "more than " + std::to_string(n) + " biases");
  }
  std::set<std::pair<long, long>> seen;
  while (next_line()) {
    std::istringstream ls(line);
    long i = 0;
    long j = 0;
    double w = 0.0;
    std::string extra;
    if (!(ls >> i >> j >> w) || (ls >> extra)) throw ParseError(line_no, 0, "expected a weight triple \"i j w\"");
    if (i < 0 || j >= n || i >= j) throw ParseError(line_no, 0, "weight indices must satisfy 0 <= i < j < N");
    if (!seen.insert({i, j}).second) throw ParseError(line_no, 0, "duplicate weight for pair");
    theta.set_weight(static_cast<std::size_t>(i), static_cast<std::size_t>(j), w);
  }
  return theta;
}

std::string format_theta(const BoltzmannParams& theta) {
  theta.validate();
  std::ostringstream out;
  out << std::setprecision(17);
  out << theta.n << '\n';
  for (std::size_t i = 0; i < theta.n; ++i) out << (i ? " " : "") << theta.bias[i];
  out << '\n';
  for (std::size_t i = 0; i < theta.n; ++i) {
    for (std::size_t j = i + 1; j < theta.n; ++j) {
      if (theta.w(i, j) != 0.0) out << i << ' ' << j << ' ' << theta.w(i, j) << '\n';
    }
  }
  return out.str();
}

void IsingSystem::validate() const {
  if (connectivity.rows() != n || connectivity.cols() != n) throw std::domain_error("connectivity matrix is not N x N");
  if (coupling.size() != n * n) throw std::domain_error("coupling matrix is not N x N");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (connectivity.get(a, b) != connectivity.get(b, a)) throw std::domain_error("connectivity matrix is not symmetric");
      if (!connectivity.get(a, b)) continue;
      if (a == b) throw std::domain_error("connectivity matrix has a self loop");
      if (!std::isfinite(j(a, b))) throw std::domain_error("coupling is not finite on the support of C");
      if (j(a, b) != j(b, a)) throw std::domain_error("coupling is not symmetric on the support of C");
    }
  }
}

double ising_energy(const IsingSystem& system, std::span<const int> sigma) {
  system.validate();
  if (sigma.size() != system.n) throw std::domain_error("spin configuration length differs from N");
  for (int s : sigma) {
    if (s != 1 && s != -1) throw std::domain_error("spins must be +1 or -1");
  }
  double e = 0.0;
  for (std::size_t a = 0; a < system.n; ++a) {
    for (std::size_t b = a + 1; b < system.n; ++b) {
      if (system.connectivity.get(a, b)) e += system.j(a, b) * sigma[a] * sigma[b];
    }
  }
  return e;
}

std::size_t syndrome_energy(const BinaryMatrix& h, const BitVector& x) {
  if (x.size() != h.cols()) throw std::domain_error("word length differs from the number of columns of H");
  return h.multiply(x).weight();
}

MinimaReport codeword_minima_check(const BinaryMatrix& h, std::size_t guard) {
  const auto basis = h.nullspace_basis();
  if (basis.size() > guard) {
    throw ResourceError("minima-nullspace", "codeword enumeration over nullspace dimension " +
                                                std::to_string(basis.size()) + " exceeds the guard " +
                                                std::to_string(guard));
  }
  std::vector<BitVector> columns;
  columns.reserve(h.cols());
  for (std::size_t c = 0; c < h.cols(); ++c) columns.push_back(h.column(c));

  MinimaReport report;
  report.codewords = std::uint64_t{1} << basis.size();
  report.neighbor_energy.assign(h.cols(), std::numeric_limits<std::size_t>::max());
  BitVector word(h.cols());
  for (std::uint64_t i = 0; i < report.codewords; ++i) {
    if (i > 0) word ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    const BitVector syndrome = h.multiply(word);
    if (!syndrome.none()) report.nonzero_syndrome.push_back(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < h.cols(); ++j) {
      const std::size_t e = (syndrome ^ columns[j]).weight();
      report.neighbor_energy[j] = std::min(report.neighbor_energy[j], e);
    }
  }
  for (std::size_t j = 0; j < h.cols(); ++j) {
    if (report.neighbor_energy[j] == 0) report.zero_cost_bits.push_back(j);
  }
  report.pass = report.nonzero_syndrome.empty() && report.zero_cost_bits.empty();
  return report;
}

MinimaReport codeword_minima_certificate(const BinaryMatrix& h) {
  const auto basis = h.nullspace_basis();
  MinimaReport report;
  report.exhaustive = false;
  report.codewords = basis.size() >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << basis.size();
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (!h.multiply(basis[b]).none()) report.nonzero_syndrome.push_back(b);
  }
  report.neighbor_energy.resize(h.cols());
  for (std::size_t j = 0; j < h.cols(); ++j) {
    report.neighbor_energy[j] = h.col_weight(j);
    if (report.neighbor_energy[j] == 0) report.zero_cost_bits.push_back(j);
  }
  report.pass = report.nonzero_syndrome.empty() && report.zero_cost_bits.empty();
  return report;
}

}  // namespace qcising
