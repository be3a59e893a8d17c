#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcising/binary_matrix.hpp"
#include "qcising/circulant.hpp"

namespace qcising {

struct DivisibilityReport {
  long k = 0;
  std::vector<long> radii;
  std::vector<bool> radius_divides;  // k mod r_i == 0, per radius
  long radius_sum = 0;
  bool sum_divides = false;          // k mod sum(r_i) == 0
  bool general_divides = false;      // sum(r_i) * prod(r_i) divides k
  bool pass = false;                 // every radius and the sum divide k
};

/// Requires k >= 1 and positive radii.
DivisibilityReport radius_divisibility(long k, const std::vector<long>& radii);

enum class GaugeAxis { rows, columns };

/// Per line: (sum of shifts) mod L == 0, zero blocks excluded from the sum.
std::vector<bool> shbf_gauge_check(const ExponentMatrix& e, GaugeAxis axis = GaugeAxis::rows);

/// Adds m * S (S = L / N, N = column count) to every shift in `row`, mod L, and reports
/// whether that row's gauge verdict is unchanged. Throws std::domain_error if N does not divide L.
bool row_shift_invariance(const ExponentMatrix& e, std::size_t row, long multiplier);

/// Radius, phi and theta rows of N weight-1 circulants of size k, with the gauge and
/// divisibility reports found at construction (construction never fails on them).
struct SphericalMatrix {
  ExponentMatrix matrix;  // 3 x N, circulant size k
  std::vector<bool> row_gauge;
  std::optional<DivisibilityReport> divisibility;  // over the distinct radius shifts, when all are positive

  int k() const { return matrix.circulant_size(); }
  std::size_t n() const { return matrix.cols(); }
};

SphericalMatrix build_spherical(const std::vector<int>& radii, const std::vector<int>& phi, const std::vector<int>& theta, int k);

/// Three-row exponent matrix (radius, phi, theta) read as a SphericalMatrix.
SphericalMatrix spherical_from_exponent(const ExponentMatrix& e);

/// Exponent text with a "# spherical k N" comment header.
std::string format_spherical(const SphericalMatrix& sm);

/// Radius row collapsed to N weight-1 circulants of size S = k / N with shifts r_i mod S;
/// phi and theta each merged into one weight-N circulant of size k.
struct CollapsedSpherical {
  int k = 0;
  std::size_t n = 0;
  int block = 0;  // S
  std::vector<int> radius_shifts;
  std::vector<int> phi_cell;    // sorted
  std::vector<int> theta_cell;  // sorted

  /// (S + 2k) x k binary matrix: radius blocks side by side, then the two k x k sums.
  /// A shift repeated inside a merged cell would cancel and is rejected.
  BinaryMatrix to_binary() const;
};

CollapsedSpherical collapse_radial(const SphericalMatrix& sm);

}  // namespace qcising
