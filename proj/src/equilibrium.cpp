#include "qcising/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcising {

namespace {

double wrap(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

double min_image_abs(double d, double period) { return std::abs(d - period * std::round(d / period)); }

std::vector<std::size_t> arc_order(const ChargeSystem& s) {
  std::vector<std::size_t> order(s.particles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.particles[a].x < s.particles[b].x; });
  return order;
}

// Gap from order[k] to order[k + 1] (cyclically), measured in increasing arc coordinate.
std::vector<double> gaps_in_order(const ChargeSystem& s, const std::vector<std::size_t>& order) {
  const double c = std::get<Circle>(s.geometry).circumference;
  std::vector<double> gaps(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double from = s.particles[order[k]].x;
    const double to = s.particles[order[(k + 1) % order.size()]].x;
    double g = wrap(to - from, c);
    if (order.size() == 1) g = c;
    gaps[k] = g;
  }
  return gaps;
}

struct Offset {
  int di;
  int dj;
};

// Multicell neighbours 1..8 (index 0 unused).
constexpr std::array<Offset, 9> kMulticell = {{{0, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}}};
constexpr std::array<int, 3> kX1Plus = {1, 8, 7};
constexpr std::array<int, 3> kX1Minus = {3, 4, 5};
constexpr std::array<int, 3> kX2Plus = {1, 2, 3};
constexpr std::array<int, 3> kX2Minus = {5, 6, 7};

struct Neighbor {
  std::size_t index;
  long wraps_y;  // periods crossed in y, for the twist
};

Neighbor neighbor_of(const Torus& t, std::size_t node, int which) {
  const auto i = static_cast<long>(node % t.nx);
  const auto j = static_cast<long>(node / t.nx);
  const auto nx = static_cast<long>(t.nx);
  const auto ny = static_cast<long>(t.ny);
  const long ni = ((i + kMulticell[which].di) % nx + nx) % nx;
  const long raw_j = j + kMulticell[which].dj;
  const long nj = (raw_j % ny + ny) % ny;
  return {static_cast<std::size_t>(nj * nx + ni), (raw_j - nj) / ny};
}

double projection(const ChargeSystem& s, const Torus& t, std::size_t node, int which, bool along_x) {
  const auto& p0 = s.particles[node];
  const Neighbor nb = neighbor_of(t, node, which);
  const auto& pj = s.particles[nb.index];
  const double r = along_x ? min_image_abs(pj.x + static_cast<double>(nb.wraps_y) * t.twist - p0.x, t.lx)
                           : min_image_abs(pj.y - p0.y, t.ly);
  if (r == 0.0) {
    std::ostringstream msg;
    msg << "particle " << node << ": zero " << (along_x ? "x" : "y") << "-projection to multicell neighbour " << which;
    throw std::domain_error(msg.str());
  }
  return r;
}

}  // namespace

void ChargeSystem::validate() const {
  if (const auto* c = std::get_if<Circle>(&geometry)) {
    if (!(c->circumference > 0) || !std::isfinite(c->circumference)) throw std::domain_error("circumference must be positive");
  } else {
    const auto& t = std::get<Torus>(geometry);
    if (!(t.lx > 0) || !(t.ly > 0) || !std::isfinite(t.lx) || !std::isfinite(t.ly)) {
      throw std::domain_error("torus periods must be positive");
    }
    if (!std::isfinite(t.twist)) throw std::domain_error("torus twist must be finite");
    if (t.nx == 0 || t.ny == 0) throw std::domain_error("torus lattice dimensions must be positive");
    if (particles.size() != t.nx * t.ny) throw std::domain_error("torus needs exactly nx * ny particles");
  }
  for (const auto& p : particles) {
    if (!(p.q > 0) || !std::isfinite(p.q)) throw std::domain_error("charges must be positive");
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::domain_error("positions must be finite");
  }
}

void ChargeSystem::normalize() {
  if (const auto* c = std::get_if<Circle>(&geometry)) {
    for (auto& p : particles) {
      p.x = wrap(p.x, c->circumference);
      p.y = 0.0;
    }
  } else {
    const auto& t = std::get<Torus>(geometry);
    for (auto& p : particles) {
      const double periods = std::floor(p.y / t.ly);
      p.x = wrap(p.x - periods * t.twist, t.lx);
      p.y = wrap(p.y, t.ly);
    }
  }
}

ChargeSystem uniform_circle(std::size_t n, double circumference, double q, double offset) {
  ChargeSystem s{Circle{circumference}, {}};
  for (std::size_t k = 0; k < n; ++k) s.particles.push_back({q, offset + circumference * static_cast<double>(k) / static_cast<double>(n), 0.0});
  s.validate();
  s.normalize();
  return s;
}

ChargeSystem uniform_torus(std::size_t nx, std::size_t ny, double lx, double ly, double q, double shear) {
  ChargeSystem s{Torus{lx, ly, nx, ny, shear * static_cast<double>(ny)}, {}};
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      s.particles.push_back({q, lx * static_cast<double>(i) / static_cast<double>(nx) + shear * static_cast<double>(j),
                             ly * static_cast<double>(j) / static_cast<double>(ny)});
    }
  }
  s.validate();
  s.normalize();
  return s;
}

std::vector<double> circle_gaps(const ChargeSystem& system) {
  if (!system.on_circle()) throw std::domain_error("circle_gaps needs a circle");
  return gaps_in_order(system, arc_order(system));
}

ForceReport circle_net_forces(const ChargeSystem& system) {
  if (!system.on_circle()) throw std::domain_error("circle_net_forces needs a circle");
  system.validate();
  const std::size_t n = system.particles.size();
  if (n < 2) throw std::domain_error("circle forces need at least 2 particles");
  ChargeSystem s = system;
  s.normalize();
  const auto order = arc_order(s);
  const auto gaps = gaps_in_order(s, order);
  ForceReport report;
  report.force.assign(n, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const double d_r = gaps[k];
    const double d_l = gaps[(k + n - 1) % n];
    if (d_r == 0.0 || d_l == 0.0) throw std::domain_error("coincident particle positions on the circle");
    const auto& p = s.particles[order[k]];
    const double q_r = s.particles[order[(k + 1) % n]].q;
    const double q_l = s.particles[order[(k + n - 1) % n]].q;
    const double f = p.q * q_r / (d_r * d_r) - p.q * q_l / (d_l * d_l);
    report.force[order[k]][0] = f;
    report.max_norm = std::max(report.max_norm, std::abs(f));
  }
  return report;
}

ForceReport torus_net_forces(const ChargeSystem& system) {
  if (system.on_circle()) throw std::domain_error("torus_net_forces needs a torus");
  system.validate();
  const auto& t = std::get<Torus>(system.geometry);
  ForceReport report;
  report.force.assign(system.particles.size(), {0.0, 0.0});
  for (std::size_t node = 0; node < system.particles.size(); ++node) {
    const double q0 = system.particles[node].q;
    auto term = [&](int which, bool along_x) {
      const double r = projection(system, t, node, which, along_x);
      return system.particles[neighbor_of(t, node, which).index].q / (r * r);
    };
    double fx = 0.0;
    double fy = 0.0;
    for (int w : kX1Plus) fx += term(w, true);
    for (int w : kX1Minus) fx -= term(w, true);
    for (int w : kX2Plus) fy += term(w, false);
    for (int w : kX2Minus) fy -= term(w, false);
    report.force[node] = {q0 * fx, q0 * fy};
    report.max_norm = std::max({report.max_norm, std::abs(q0 * fx), std::abs(q0 * fy)});
  }
  return report;
}

ForceReport net_forces(const ChargeSystem& system) {
  return system.on_circle() ? circle_net_forces(system) : torus_net_forces(system);
}

double screened_energy(const ChargeSystem& system) {
  system.validate();
  if (system.on_circle()) {
    ChargeSystem s = system;
    s.normalize();
    const auto order = arc_order(s);
    const auto gaps = gaps_in_order(s, order);
    double e = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (gaps[k] == 0.0) throw std::domain_error("coincident particle positions on the circle");
      e += s.particles[order[k]].q * s.particles[order[(k + 1) % order.size()]].q / gaps[k];
    }
    return e;
  }
  const auto& t = std::get<Torus>(system.geometry);
  double e = 0.0;
  for (std::size_t node = 0; node < system.particles.size(); ++node) {
    const double q0 = system.particles[node].q;
    auto term = [&](int which, bool along_x) {
      return q0 * system.particles[neighbor_of(t, node, which).index].q / projection(system, t, node, which, along_x);
    };
    for (int w : kX1Plus) e += term(w, true);
    for (int w : kX1Minus) e += term(w, true);
    for (int w : kX2Plus) e += term(w, false);
    for (int w : kX2Minus) e += term(w, false);
  }
  return 0.5 * e;
}

bool is_equilibrium(const ForceReport& report, double tol) {
  if (!(tol > 0)) throw std::domain_error("equilibrium tolerance must be positive");
  return report.max_norm <= tol;
}

RelaxResult relax(ChargeSystem system, const RelaxOptions& options) {
  if (!(options.step > 0)) throw std::domain_error("relaxation step must be positive");
  system.validate();
  system.normalize();

  const bool circle = system.on_circle();
  const std::vector<std::size_t> cyclic = circle ? arc_order(system) : std::vector<std::size_t>{};
  auto order_kept = [&](const ChargeSystem& s) {
    // Sum of gaps along the original cyclic order is one circumference unless particles crossed.
    const double c = std::get<Circle>(s.geometry).circumference;
    const auto gaps = gaps_in_order(s, cyclic);
    const double total = std::accumulate(gaps.begin(), gaps.end(), 0.0);
    const bool positive = std::all_of(gaps.begin(), gaps.end(), [](double g) { return g > 0.0; });
    return positive && std::abs(total - c) <= 1e-9 * c;
  };

  RelaxResult result;
  double step = options.step;
  ForceReport forces = net_forces(system);
  double energy = screened_energy(system);
  result.trajectory.push_back({0, system.particles, forces, energy, step});

  std::size_t iter = 0;
  while (!is_equilibrium(forces, options.tol) && iter < options.max_iters) {
    ++iter;
    ChargeSystem trial = system;
    for (std::size_t p = 0; p < trial.particles.size(); ++p) {
      if (circle) {
        trial.particles[p].x -= step * forces.force[p][0];
      } else {
        trial.particles[p].x += step * forces.force[p][0];
        trial.particles[p].y += step * forces.force[p][1];
      }
    }
    trial.normalize();

    bool accept = !circle || order_kept(trial);
    double trial_energy = energy;
    ForceReport trial_forces;
    if (accept) {
      try {
        trial_energy = screened_energy(trial);
        trial_forces = net_forces(trial);
      } catch (const std::domain_error&) {
        accept = false;
      }
    }
    // Near the minimum the energy change drops below rounding, so a smaller force also counts as progress.
    const double slack = 1e-13 * std::max(1.0, std::abs(energy));
    if (!accept || (trial_energy > energy + slack) || (trial_energy > energy && trial_forces.max_norm >= forces.max_norm)) {
      step *= 0.5;
      if (step == 0.0) break;
      continue;
    }
    step *= 1.25;
    system = std::move(trial);
    forces = std::move(trial_forces);
    energy = trial_energy;
    result.trajectory.push_back({iter, system.particles, forces, energy, step});
  }
  result.converged = is_equilibrium(forces, options.tol);
  result.iterations = iter;
  result.system = std::move(system);
  return result;
}

std::string forces_csv(const ChargeSystem& system, const ForceReport& report) {
  std::ostringstream out;
  out << std::setprecision(17) << "particle,q,x,y,force_x,force_y\n";
  for (std::size_t p = 0; p < system.particles.size(); ++p) {
    const auto& pt = system.particles[p];
    out << p << ',' << pt.q << ',' << pt.x << ',' << pt.y << ',' << report.force[p][0] << ',' << report.force[p][1] << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const RelaxResult& result) {
  std::ostringstream out;
  out << std::setprecision(17) << "iteration,particle,x,y,force_x,force_y,energy,step\n";
  for (const auto& frame : result.trajectory) {
    for (std::size_t p = 0; p < frame.particles.size(); ++p) {
      const auto& pt = frame.particles[p];
      out << frame.iteration << ',' << p << ',' << pt.x << ',' << pt.y << ',' << frame.forces.force[p][0] << ','
          << frame.forces.force[p][1] << ',' << frame.energy << ',' << frame.step << '\n';
    }
  }
  return out.str();
}

}  // namespace qcising
