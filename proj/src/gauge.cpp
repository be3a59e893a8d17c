#include "qcising/gauge.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qcising/codes.hpp"
#include "qcising/exponent_io.hpp"

namespace qcising {

DivisibilityReport radius_divisibility(long k, const std::vector<long>& radii) {
  if (k < 1) throw std::domain_error("circulant size k must be >= 1");
  if (radii.empty()) throw std::domain_error("at least one radius is required");
  DivisibilityReport report;
  report.k = k;
  report.radii = radii;
  report.pass = true;
  long product = 1;
  bool product_overflow = false;
  for (long r : radii) {
    if (r < 1) throw std::domain_error("radii must be positive");
    const bool divides = k % r == 0;
    report.radius_divides.push_back(divides);
    report.pass = report.pass && divides;
    if (__builtin_add_overflow(report.radius_sum, r, &report.radius_sum)) throw std::domain_error("radius sum overflows");
    product_overflow = product_overflow || __builtin_mul_overflow(product, r, &product);
  }
  report.sum_divides = k % report.radius_sum == 0;
  report.pass = report.pass && report.sum_divides;
  long witness = 0;
  // A witness larger than k cannot divide it.
  report.general_divides = !product_overflow && !__builtin_mul_overflow(product, report.radius_sum, &witness) && k % witness == 0;
  return report;
}

std::vector<bool> shbf_gauge_check(const ExponentMatrix& e, GaugeAxis axis) {
  const long L = e.circulant_size();
  const bool rows = axis == GaugeAxis::rows;
  const std::size_t lines = rows ? e.rows() : e.cols();
  const std::size_t length = rows ? e.cols() : e.rows();
  std::vector<bool> result;
  for (std::size_t line = 0; line < lines; ++line) {
    long sum = 0;
    for (std::size_t t = 0; t < length; ++t) {
      const int s = rows ? e.at(line, t) : e.at(t, line);
      if (s != kZeroBlock) sum += s;
    }
    result.push_back(sum % L == 0);
  }
  return result;
}

bool row_shift_invariance(const ExponentMatrix& e, std::size_t row, long multiplier) {
  if (row >= e.rows()) throw std::domain_error("row index out of range");
  const long L = e.circulant_size();
  const long n = static_cast<long>(e.cols());
  if (L % n != 0) {
    throw std::domain_error("S = L / N is not an integer (L = " + std::to_string(L) + ", N = " + std::to_string(n) + ")");
  }
  const long add = ((multiplier % L) * (L / n) % L + L) % L;
  auto grid = e.to_grid();
  for (int& s : grid[row]) {
    if (s != kZeroBlock) s = static_cast<int>((s + add) % L);
  }
  const ExponentMatrix shifted(e.circulant_size(), grid);
  return shbf_gauge_check(e)[row] == shbf_gauge_check(shifted)[row];
}

namespace {

SphericalMatrix attach_reports(ExponentMatrix matrix) {
  SphericalMatrix sm{std::move(matrix), {}, std::nullopt};
  sm.row_gauge = shbf_gauge_check(sm.matrix);
  std::set<long> distinct;
  bool positive = true;
  for (std::size_t c = 0; c < sm.matrix.cols(); ++c) {
    const int r = sm.matrix.at(0, c);
    positive = positive && r > 0;
    distinct.insert(r);
  }
  if (positive) sm.divisibility = radius_divisibility(sm.matrix.circulant_size(), std::vector<long>(distinct.begin(), distinct.end()));
  return sm;
}

}  // namespace

SphericalMatrix build_spherical(const std::vector<int>& radii, const std::vector<int>& phi, const std::vector<int>& theta, int k) {
  if (radii.empty()) throw std::domain_error("a spherical matrix needs at least one column");
  if (phi.size() != radii.size() || theta.size() != radii.size()) {
    throw std::domain_error("radius, phi and theta rows must have the same number of columns");
  }
  for (const auto* row : {&radii, &phi, &theta}) {
    for (int s : *row) {
      if (s < 0 || s >= k) throw std::domain_error("spherical shifts must lie in [0, k)");
    }
  }
  return attach_reports(ExponentMatrix(k, {radii, phi, theta}));
}

SphericalMatrix spherical_from_exponent(const ExponentMatrix& e) {
  if (e.rows() != 3) throw std::domain_error("a spherical matrix has exactly 3 rows (radius, phi, theta)");
  const auto grid = e.to_grid();
  return build_spherical(grid[0], grid[1], grid[2], e.circulant_size());
}

std::string format_spherical(const SphericalMatrix& sm) {
  std::ostringstream header;
  header << "spherical " << sm.k() << ' ' << sm.n();
  return format_exponent(sm.matrix, {header.str(), "rows: radius, phi, theta"});
}

CollapsedSpherical collapse_radial(const SphericalMatrix& sm) {
  const int k = sm.k();
  const auto n = static_cast<int>(sm.n());
  if (k % n != 0) {
    throw std::domain_error("collapse needs N to divide k (k = " + std::to_string(k) + ", N = " + std::to_string(n) + ")");
  }
  CollapsedSpherical out;
  out.k = k;
  out.n = sm.n();
  out.block = k / n;
  for (std::size_t c = 0; c < sm.n(); ++c) {
    out.radius_shifts.push_back(sm.matrix.at(0, c) % out.block);
    out.phi_cell.push_back(sm.matrix.at(1, c));
    out.theta_cell.push_back(sm.matrix.at(2, c));
  }
  std::sort(out.phi_cell.begin(), out.phi_cell.end());
  std::sort(out.theta_cell.begin(), out.theta_cell.end());
  return out;
}

BinaryMatrix CollapsedSpherical::to_binary() const {
  const auto S = static_cast<std::size_t>(block);
  const auto K = static_cast<std::size_t>(k);
  BinaryMatrix h(S + 2 * K, K);
  for (std::size_t c = 0; c < n; ++c) h.assign_block(0, c * S, cpm_from_shift(radius_shifts[c], block));
  const MetExponentMatrix merged(k, {{phi_cell}, {theta_cell}});
  h.assign_block(S, 0, lift_met(merged));
  return h;
}

}  // namespace qcising
