#pragma once

// Screened Coulomb forces (k = 1) on a circle and on a torus.
//
// Circle: each particle interacts with its two arc neighbours. With d_r the gap to the
// next particle in increasing arc coordinate and d_l the gap to the previous one,
//   F = q q_r / d_r^2 - q q_l / d_l^2,
// and a positive F pushes the particle toward decreasing arc coordinate.
//
// Torus: particles sit on an nx x ny lattice, index j * nx + i for node (i, j). The
// multicell neighbours of node 0 = (i, j) are numbered
//   1 (i-1, j-1)  2 (i, j-1)  3 (i+1, j-1)
//   8 (i-1, j)       0         4 (i+1, j)
//   7 (i-1, j+1)  6 (i, j+1)  5 (i+1, j+1)
// and, with r_x, r_y the absolute minimum-image projections of each separation,
//   F_X1 = q0 (q1/rx1^2 + q8/rx8^2 + q7/rx7^2 - q3/rx3^2 - q4/rx4^2 - q5/rx5^2)
//   F_X2 = q0 (q1/ry1^2 + q2/ry2^2 + q3/ry3^2 - q5/ry5^2 - q6/ry6^2 - q7/ry7^2).
// Positive components point toward increasing x and y.

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace qcising {

struct Circle {
  double circumference = 1.0;
};

struct Torus {
  double lx = 1.0;
  double ly = 1.0;
  std::size_t nx = 1;
  std::size_t ny = 1;
  double twist = 0.0;  // x offset of the periodic image one period up in y (skewed meshes)
};

struct Particle {
  double q = 1.0;
  double x = 0.0;
  double y = 0.0;  // unused on a circle
};

struct ChargeSystem {
  std::variant<Circle, Torus> geometry;
  std::vector<Particle> particles;

  bool on_circle() const { return std::holds_alternative<Circle>(geometry); }
  /// Throws std::domain_error on non-positive periods or charges, or a torus particle
  /// count other than nx * ny.
  void validate() const;
  /// Reduces positions into [0, period).
  void normalize();
};

/// Evenly spaced equal charges on a circle, starting at `offset`.
ChargeSystem uniform_circle(std::size_t n, double circumference, double q = 1.0, double offset = 0.0);
/// Uniform nx x ny torus grid with spacing lx / nx, ly / ny; `shear` adds j * shear to x
/// and sets the torus twist to ny * shear so the skewed mesh stays periodic.
ChargeSystem uniform_torus(std::size_t nx, std::size_t ny, double lx, double ly, double q = 1.0, double shear = 0.0);

struct ForceReport {
  std::vector<std::array<double, 2>> force;  // (tangential, 0) on a circle, (X1, X2) on a torus
  double max_norm = 0.0;                     // largest |component|
};

ForceReport circle_net_forces(const ChargeSystem& system);
ForceReport torus_net_forces(const ChargeSystem& system);
ForceReport net_forces(const ChargeSystem& system);

/// Screened energy whose negative gradient is the force above (sum of q q' / distance
/// over interacting pairs, torus terms per projection).
double screened_energy(const ChargeSystem& system);

inline constexpr double kDefaultEquilibriumTol = 1e-9;

/// max_norm <= tol. Throws std::domain_error if tol <= 0.
bool is_equilibrium(const ForceReport& report, double tol = kDefaultEquilibriumTol);

struct RelaxOptions {
  double step = 0.1;  // initial step; halved on rejection, grown by 1.25 after each accepted move
  std::size_t max_iters = 10000;
  double tol = kDefaultEquilibriumTol;
};

struct RelaxFrame {
  std::size_t iteration;
  std::vector<Particle> particles;
  ForceReport forces;
  double energy;
  double step;
};

struct RelaxResult {
  ChargeSystem system;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<RelaxFrame> trajectory;  // accepted states, starting with the input
};

/// Fixed-step descent along the net force; a step that raises the energy (or reorders
/// particles on the circle) is rejected and the step halved.
RelaxResult relax(ChargeSystem system, const RelaxOptions& options = {});

/// "particle,q,x,y,force_x,force_y"
std::string forces_csv(const ChargeSystem& system, const ForceReport& report);
/// "iteration,particle,x,y,force_x,force_y,energy,step"
std::string trajectory_csv(const RelaxResult& result);

/// Neighbour gaps in increasing arc order (circle only).
std::vector<double> circle_gaps(const ChargeSystem& system);

}  // namespace qcising
