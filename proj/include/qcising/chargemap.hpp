#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcising/circulant.hpp"

namespace qcising {

/// Shift pairs (n1, n3) with 0 < n1, n3 < e and (n1 + n3) mod e == 0.
struct BalancedPairSet {
  int e = 0;
  std::vector<std::pair<int, int>> pairs;
};

/// e = R1 + R3 and every pair (i, e - i), 1 <= i <= e - 1.
BalancedPairSet map_1d_three(long r1, long r3);

/// One row [n1 | n3] per pair, circulant size e (the zero middle block is dropped).
ExponentMatrix balanced_pairs_matrix(const BalancedPairSet& set);

struct LabeledRow {
  ExponentMatrix matrix;            // 1 x k or 2 x k
  std::vector<std::string> labels;  // one per column
};

/// Four collinear particles with squared gaps r12^2 = a, r23^2 = b, r34^2 = a + b.
/// c = lcm(a + b, a + 2b); columns (a*c/(a+b), b*c/(a+b), b*c/(a+2b), (a+b)*c/(a+2b)).
LabeledRow map_1d_four(long a, long b);

struct ChargedParticle {
  std::string id;
  double q = 1.0;
  double x = 0.0;
  double y = 0.0;
  std::string cell;  // empty unless cells are declared
};

/// Two-row map of one cell: row 0 the x-projections, row 1 the y-projections, each scaled
/// from its own total (L_x or L_y) to L = lcm(L_x, L_y).
struct CellMap {
  ExponentMatrix matrix;
  long lx = 0;
  long ly = 0;
  std::vector<std::string> particle_ids;  // column provenance
};

/// Coordinates are the projections onto the reference axes and must be positive
/// integers; at least two particles.
CellMap map_2d_cell(const std::vector<ChargedParticle>& cell);

/// One CellMap per cell. A particle id appearing in several cells must carry the same
/// charge and coordinates everywhere.
std::vector<CellMap> map_coupled_cells(const std::vector<std::vector<ChargedParticle>>& cells);

/// Groups particles by their `cell` field in order of first appearance.
std::vector<std::vector<ChargedParticle>> group_cells(const std::vector<ChargedParticle>& particles);

/// CSV with header containing id, q, x, y and optionally cell (any column order).
std::vector<ChargedParticle> parse_particles_csv(std::string_view text);

/// 2 x 7 map of a rotated hexagonal prism around node 0, circulant size q:
///   dRx = Lx - Lx cos(alpha), dRy = Ly - Ly sin(alpha) with (Lx, Ly) = node_j - node_0,
///   dR = floor(R / q), shift = floor(dR_axis / dR) mod q; column 0 is 0 in both rows.
struct HexRotationMap {
  ExponentMatrix matrix;
  long dr = 0;
  std::vector<std::array<double, 2>> delta;    // (dRx, dRy) per node
  std::vector<std::array<long, 2>> quotient;   // floor(delta / dR) before reduction
};

HexRotationMap hexagonal_rotation_map(double grid_step, double alpha_radians, int q,
                                      const std::vector<std::array<double, 2>>& nodes);

/// Centre followed by the six nodes of a regular hexagon of side `grid_step`.
std::vector<std::array<double, 2>> hexagon_nodes(double grid_step);

/// Signed-area ratios (L1, L2, L3) of `point` in the triangle (v1, v2, v3); values leave
/// [0, 1] outside the triangle.
std::array<double, 3> barycentric(std::array<double, 2> point, std::array<double, 2> v1, std::array<double, 2> v2,
                                  std::array<double, 2> v3);

/// Particle per column with angle 2*pi*E[r][j]/L on axis r; a zero block leaves the axis unset.
struct PlacedParticle {
  std::size_t column = 0;
  std::vector<std::optional<double>> angle;  // one entry per block row
};

/// Supports 1 or 2 block rows; more throws std::domain_error (no planar reading).
std::vector<PlacedParticle> geometry_from_exponent(const ExponentMatrix& e);

/// Mean angle per axis using representatives in (-pi, pi]; unset axes are skipped.
std::vector<double> angular_centroid(const std::vector<PlacedParticle>& placement);

/// Shift difference recovered from two angles: round((b - a) * L / 2pi) mod L.
int quantize_gap(double angle_a, double angle_b, int circulant_size);

}  // namespace qcising
