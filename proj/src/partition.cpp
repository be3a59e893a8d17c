#include "qcising/partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qcising/errors.hpp"
#include "qcising/parallel.hpp"

namespace qcising {

RealMatrix RealMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  RealMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols) throw std::invalid_argument("ragged matrix rows");
    std::copy(rows[r].begin(), rows[r].end(), m.data.begin() + static_cast<std::ptrdiff_t>(r * m.cols));
  }
  return m;
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

RealMatrix parse_matrix_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string field;
    std::size_t offset = 0;
    while (std::getline(ls, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (field.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ParseError(line_no, offset + 1, "expected a number, found '" + field + "'");
      }
      offset += field.size() + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(line_no, 0, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(line_no + 1, 0, "matrix has no rows");
  return RealMatrix::from_rows(rows);
}

namespace {

void require_nonnegative_square(const RealMatrix& a) {
  if (!a.square()) throw std::domain_error("matrix must be square");
  for (double v : a.data) {
    if (!std::isfinite(v) || v < 0) throw std::domain_error("matrix entries must be finite and non-negative");
  }
}

void require_size(std::size_t n, std::size_t max, const char* guard) {
  if (n > max) {
    throw ResourceError(guard, "permanent of a " + std::to_string(n) + " x " + std::to_string(n) +
                                   " matrix exceeds the limit n <= " + std::to_string(max));
  }
}

}  // namespace

double permanent_bruteforce(const RealMatrix& a) {
  require_nonnegative_square(a);
  require_size(a.rows, kBruteforcePermanentMax, "permanent-bruteforce-n");
  std::vector<std::size_t> sigma(a.rows);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  double total = 0.0;
  do {
    double p = 1.0;
    for (std::size_t i = 0; i < a.rows; ++i) p *= a.at(i, sigma[i]);
    total += p;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

double permanent_ryser(const RealMatrix& a, unsigned threads) {
  require_nonnegative_square(a);
  const std::size_t n = a.rows;
  require_size(n, kRyserPermanentMax, "permanent-ryser-n");
  if (n == 0) return 1.0;

  // perm = (-1)^n sum over non-empty column sets S of (-1)^|S| prod_i sum_{j in S} a_ij.
  const std::uint64_t count = (std::uint64_t{1} << n) - 1;
  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    const std::uint64_t k0 = begin + 1;
    std::uint64_t gray = k0 ^ (k0 >> 1);
    std::vector<double> row_sum(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (!((gray >> j) & 1U)) continue;
      for (std::size_t i = 0; i < n; ++i) row_sum[i] += a.at(i, j);
    }
    auto term = [&] {
      double p = 1.0;
      for (double s : row_sum) p *= s;
      return (std::popcount(gray) & 1) ? -p : p;
    };
    double acc = term();
    for (std::uint64_t k = k0 + 1; k <= end; ++k) {
      const auto j = static_cast<std::size_t>(std::countr_zero(k));
      const bool adding = !((gray >> j) & 1U);
      gray ^= std::uint64_t{1} << j;
      for (std::size_t i = 0; i < n; ++i) row_sum[i] += adding ? a.at(i, j) : -a.at(i, j);
      acc += term();
    }
    return acc;
  };
  const double sum = chunked_reduce(count, threads, 0.0, chunk, [](double x, double y) { return x + y; });
  return (n & 1U) ? -sum : sum;
}

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

BetheResult bethe_permanent(const RealMatrix& a_in, const BetheOptions& options) {
  require_nonnegative_square(a_in);
  if (!(options.damping > 0 && options.damping <= 1)) throw std::domain_error("damping must lie in (0, 1]");
  if (!(options.tol > 0)) throw std::domain_error("tolerance must be positive");
  const std::size_t n = a_in.rows;
  if (n == 0) throw std::domain_error("matrix must be non-empty");

  BetheResult result;
  if (n == 1) {
    result.value = a_in.at(0, 0);
    result.log_value = std::log(result.value);
    result.converged = true;
    result.beliefs = RealMatrix(1, 1, 1.0);
    return result;
  }

  RealMatrix a = a_in;
  for (double& v : a.data) v = std::max(v, options.floor);

  RealMatrix rho(n, n, 1.0);
  RealMatrix kappa(n, n, 1.0);
  const double d = options.damping;
  double residual = 0.0;
  std::size_t iter = 0;
  while (iter < options.max_iter) {
    ++iter;
    residual = 0.0;
    // Exclusion sums are formed directly; total minus one term cancels badly when a
    // single entry dominates its row.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double others = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != j) others += a.at(i, k) * kappa.at(i, k);
        }
        const double computed = 1.0 / others;
        const double next = d * computed + (1.0 - d) * rho.at(i, j);
        residual = std::max(residual, std::abs(std::log(next / rho.at(i, j))));
        rho.at(i, j) = next;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        double others = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
          if (l != i) others += a.at(l, j) * rho.at(l, j);
        }
        const double computed = 1.0 / others;
        const double next = d * computed + (1.0 - d) * kappa.at(i, j);
        residual = std::max(residual, std::abs(std::log(next / kappa.at(i, j))));
        kappa.at(i, j) = next;
      }
    }
    result.residual_history.push_back(residual);
    if (residual <= options.tol) break;
  }

  result.beliefs = RealMatrix(n, n);
  double free_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double log_t = std::log(a.at(i, j)) + std::log(rho.at(i, j)) + std::log(kappa.at(i, j));
      const double g = 1.0 / (1.0 + std::exp(-log_t));
      const double one_minus = 1.0 / (1.0 + std::exp(log_t));
      result.beliefs.at(i, j) = g;
      free_energy += -g * std::log(a.at(i, j)) + xlogx(g) - xlogx(one_minus);
    }
  }
  result.log_value = -free_energy;
  result.value = std::exp(result.log_value);
  result.iterations = iter;
  result.residual = residual;
  result.converged = residual <= options.tol;
  return result;
}

std::string bethe_residual_csv(const BetheResult& result) {
  std::ostringstream out;
  out << std::setprecision(17) << "iteration,residual\n";
  for (std::size_t k = 0; k < result.residual_history.size(); ++k) out << (k + 1) << ',' << result.residual_history[k] << '\n';
  return out.str();
}

double log_abs_det(const RealMatrix& w) {
  if (!w.square() || w.rows == 0) throw std::domain_error("determinant needs a non-empty square matrix");
  for (double v : w.data) {
    if (!std::isfinite(v)) throw std::domain_error("matrix entries must be finite");
  }
  const std::size_t n = w.rows;
  RealMatrix lu = w;
  double scale = 0.0;
  for (double v : w.data) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw NumericError("matrix is singular (all zero)");
  double log_det = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu.at(r, k)) > std::abs(lu.at(pivot, k))) pivot = r;
    }
    if (std::abs(lu.at(pivot, k)) <= 1e-14 * scale) throw NumericError("matrix is singular to working precision");
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu.at(k, c), lu.at(pivot, c));
    }
    const double p = lu.at(k, k);
    log_det += std::log(std::abs(p));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = lu.at(r, k) / p;
      if (f == 0.0) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu.at(r, c) -= f * lu.at(k, c);
    }
  }
  return log_det;
}

double det_normalization(const RealMatrix& w) { return std::exp(-log_abs_det(w)); }

double log_partition_from_energies(std::vector<double> energies) {
  if (energies.empty()) throw std::domain_error("energy list is empty");
  for (double e : energies) {
    if (std::isnan(e)) throw std::domain_error("energy is NaN");
  }
  std::sort(energies.begin(), energies.end());
  const double lowest = energies.front();
  if (std::isinf(lowest)) return lowest < 0 ? INFINITY : -INFINITY;
  double sum = 0.0;
  for (double e : energies) sum += std::exp(-(e - lowest));
  return -lowest + std::log(sum);
}

double partition_from_energies(std::vector<double> energies) {
  return std::exp(log_partition_from_energies(std::move(energies)));
}

double rbm_marginal_energy(const std::vector<std::uint8_t>& v, const std::vector<std::uint8_t>& x, const RbmParams& theta) {
  const std::size_t nv = theta.w_vh.rows;
  const std::size_t nh = theta.w_vh.cols;
  const std::size_t nx = theta.w_vx.cols;
  if (v.size() != nv) throw std::domain_error("visible vector length differs from W^{vh} rows");
  if (x.size() != nx) throw std::domain_error("input vector length differs from W^{vx} columns");
  if (theta.w_vx.rows != nv) throw std::domain_error("W^{vx} rows differ from |v|");
  if (theta.b_v.size() != nv) throw std::domain_error("b^v length differs from |v|");
  if (theta.b_h.size() != nh) throw std::domain_error("b^h length differs from |h|");
  for (auto bit : v) {
    if (bit > 1) throw std::domain_error("visible units must be 0 or 1");
  }
  for (auto bit : x) {
    if (bit > 1) throw std::domain_error("input units must be 0 or 1");
  }
  if (theta.w_hx) {
    if (theta.w_hx->rows != nh || theta.w_hx->cols != nx) throw std::domain_error("W^{hx} must be |h| x |x|");
  } else if (nx != nh || nh > nv) {
    throw std::domain_error("the row product W^{vh}_{j.} x needs |x| = |h| <= |v|; supply W^{hx} otherwise");
  }

  double energy = 0.0;
  for (std::size_t j = 0; j < nh; ++j) {
    double t = theta.b_h[j];
    for (std::size_t i = 0; i < nv; ++i) t += v[i] * theta.w_vh.at(i, j);
    for (std::size_t k = 0; k < nx; ++k) t += (theta.w_hx ? theta.w_hx->at(j, k) : theta.w_vh.at(j, k)) * x[k];
    energy += t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
  }
  for (std::size_t i = 0; i < nv; ++i) {
    if (!v[i]) continue;
    energy += theta.b_v[i];
    for (std::size_t k = 0; k < nx; ++k) energy += theta.w_vx.at(i, k) * x[k];
  }
  return energy;
}

}  // namespace qcising
