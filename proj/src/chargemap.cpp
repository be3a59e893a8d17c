#include "qcising/chargemap.hpp"

#include <climits>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qcising/errors.hpp"

namespace qcising {

namespace {

long checked_lcm(long a, long b) {
  const long g = std::gcd(a, b);
  long result = 0;
  if (__builtin_mul_overflow(a / g, b, &result) || result > INT_MAX) {
    throw std::domain_error("circulant size lcm(" + std::to_string(a) + ", " + std::to_string(b) + ") is too large");
  }
  return result;
}

int as_size(long v, const char* what) {
  if (v < 1 || v > INT_MAX) throw std::domain_error(std::string(what) + " is out of range");
  return static_cast<int>(v);
}

long positive_integer(double v, const std::string& what) {
  if (!(v > 0) || std::floor(v) != v || v > static_cast<double>(INT_MAX)) {
    std::ostringstream msg;
    msg << what << " must be a positive integer, got " << v;
    throw std::domain_error(msg.str());
  }
  return static_cast<long>(v);
}

}  // namespace

BalancedPairSet map_1d_three(long r1, long r3) {
  if (r1 < 1 || r3 < 1) throw std::domain_error("R1 and R3 must be positive integers");
  if (r1 > INT_MAX - r3) throw std::domain_error("R1 + R3 is too large");
  BalancedPairSet set;
  set.e = static_cast<int>(r1 + r3);
  for (int i = 1; i < set.e; ++i) set.pairs.emplace_back(i, set.e - i);
  return set;
}

ExponentMatrix balanced_pairs_matrix(const BalancedPairSet& set) {
  if (set.pairs.empty()) throw std::domain_error("no balanced pairs to write");
  std::vector<std::vector<int>> grid;
  for (const auto& [n1, n3] : set.pairs) grid.push_back({n1, n3});
  return ExponentMatrix(set.e, grid);
}

LabeledRow map_1d_four(long a, long b) {
  if (a < 1 || b < 1) throw std::domain_error("a and b must be positive integers");
  if (a > INT_MAX / 4 || b > INT_MAX / 4) throw std::domain_error("a and b are too large");
  const long ab = a + b;
  const long a2b = a + 2 * b;
  const long c = checked_lcm(ab, a2b);
  const std::vector<int> row = {static_cast<int>(a * (c / ab)), static_cast<int>(b * (c / ab)),
                                static_cast<int>(b * (c / a2b)), static_cast<int>(ab * (c / a2b))};
  return {ExponentMatrix(as_size(c, "c"), {row}), {"a", "b1", "b2", "a+b"}};
}

CellMap map_2d_cell(const std::vector<ChargedParticle>& cell) {
  if (cell.size() < 2) throw std::domain_error("a cell needs at least two particles");
  std::vector<long> px;
  std::vector<long> py;
  CellMap map{ExponentMatrix(1, {{0}}), 0, 0, {}};
  for (const auto& p : cell) {
    px.push_back(positive_integer(p.x, "x-projection of particle " + p.id));
    py.push_back(positive_integer(p.y, "y-projection of particle " + p.id));
    map.particle_ids.push_back(p.id);
  }
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (__builtin_add_overflow(map.lx, px[i], &map.lx) || __builtin_add_overflow(map.ly, py[i], &map.ly)) {
      throw std::domain_error("projection sums overflow");
    }
  }
  const long L = checked_lcm(map.lx, map.ly);
  std::vector<std::vector<int>> grid(2);
  for (std::size_t i = 0; i < cell.size(); ++i) {
    grid[0].push_back(static_cast<int>(px[i] * (L / map.lx)));
    grid[1].push_back(static_cast<int>(py[i] * (L / map.ly)));
  }
  map.matrix = ExponentMatrix(as_size(L, "L"), grid);
  return map;
}

std::vector<CellMap> map_coupled_cells(const std::vector<std::vector<ChargedParticle>>& cells) {
  std::map<std::string, const ChargedParticle*> seen;
  for (const auto& cell : cells) {
    for (const auto& p : cell) {
      auto [it, inserted] = seen.emplace(p.id, &p);
      if (inserted) continue;
      const auto& prior = *it->second;
      if (prior.x != p.x || prior.y != p.y || prior.q != p.q) {
        throw std::domain_error("shared particle " + p.id + " has inconsistent charge or coordinates across cells");
      }
    }
  }
  std::vector<CellMap> maps;
  maps.reserve(cells.size());
  for (const auto& cell : cells) maps.push_back(map_2d_cell(cell));
  return maps;
}

std::vector<std::vector<ChargedParticle>> group_cells(const std::vector<ChargedParticle>& particles) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<ChargedParticle>> by_cell;
  for (const auto& p : particles) {
    auto& bucket = by_cell[p.cell];
    if (bucket.empty()) order.push_back(p.cell);
    bucket.push_back(p);
  }
  std::vector<std::vector<ChargedParticle>> cells;
  for (const auto& name : order) cells.push_back(std::move(by_cell[name]));
  return cells;
}

std::vector<ChargedParticle> parse_particles_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(s);
    while (std::getline(ls, field, ',')) {
      const auto b = field.find_first_not_of(" \t\r");
      const auto e = field.find_last_not_of(" \t\r");
      fields.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    }
    if (!s.empty() && s.back() == ',') fields.emplace_back();
    return fields;
  };
  auto blank = [](const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; };

  std::map<std::string, std::size_t> column;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    header = split(line);
    break;
  }
  if (header.empty()) throw ParseError(line_no + 1, 0, "missing CSV header");
  for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  for (const char* required : {"id", "q", "x", "y"}) {
    if (!column.count(required)) throw ParseError(line_no, 0, std::string("CSV header lacks column '") + required + "'");
  }
  const bool has_cell = column.count("cell") > 0;

  std::vector<ChargedParticle> particles;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw ParseError(line_no, 0, "expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
    }
    auto number = [&](const char* name) {
      const std::string& f = fields[column[name]];
      try {
        std::size_t used = 0;
        const double v = std::stod(f, &used);
        if (used != f.size()) throw std::invalid_argument(f);
        return v;
      } catch (const std::exception&) {
        throw ParseError(line_no, 0, std::string("column '") + name + "' is not a number: '" + f + "'");
      }
    };
    ChargedParticle p;
    p.id = fields[column["id"]];
    if (p.id.empty()) throw ParseError(line_no, 0, "empty particle id");
    p.q = number("q");
    p.x = number("x");
    p.y = number("y");
    if (has_cell) p.cell = fields[column["cell"]];
    particles.push_back(std::move(p));
  }
  return particles;
}

HexRotationMap hexagonal_rotation_map(double grid_step, double alpha_radians, int q,
                                      const std::vector<std::array<double, 2>>& nodes) {
  if (q < 1) throw std::domain_error("quantization count q must be >= 1");
  if (!(grid_step > 0) || !std::isfinite(grid_step)) throw std::domain_error("grid step R must be positive");
  if (nodes.size() != 7) throw std::domain_error("the hexagonal prism has exactly 7 nodes");
  const long dr = static_cast<long>(std::floor(grid_step / q));
  if (dr == 0) throw std::domain_error("dR = floor(R / q) is 0; q must not exceed R");

  HexRotationMap map{ExponentMatrix(q, {{0}}), dr, {}, {}};
  std::vector<std::vector<int>> grid(2, std::vector<int>(7, 0));
  const double c = std::cos(alpha_radians);
  const double s = std::sin(alpha_radians);
  for (std::size_t j = 0; j < 7; ++j) {
    const double lx = nodes[j][0] - nodes[0][0];
    const double ly = nodes[j][1] - nodes[0][1];
    const std::array<double, 2> delta = {lx - lx * c, ly - ly * s};
    std::array<long, 2> quotient = {0, 0};
    if (j > 0) {
      for (int axis = 0; axis < 2; ++axis) {
        quotient[axis] = static_cast<long>(std::floor(delta[axis] / static_cast<double>(dr)));
        grid[axis][j] = static_cast<int>(((quotient[axis] % q) + q) % q);
      }
    }
    map.delta.push_back(delta);
    map.quotient.push_back(quotient);
  }
  map.matrix = ExponentMatrix(q, grid);
  return map;
}

std::vector<std::array<double, 2>> hexagon_nodes(double grid_step) {
  std::vector<std::array<double, 2>> nodes = {{0.0, 0.0}};
  for (int k = 0; k < 6; ++k) {
    const double a = k * std::numbers::pi / 3.0;
    nodes.push_back({grid_step * std::cos(a), grid_step * std::sin(a)});
  }
  return nodes;
}

std::array<double, 3> barycentric(std::array<double, 2> point, std::array<double, 2> v1, std::array<double, 2> v2,
                                  std::array<double, 2> v3) {
  auto area = [](std::array<double, 2> a, std::array<double, 2> b, std::array<double, 2> c) {
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
  };
  const double total = area(v1, v2, v3);
  const double scale = std::max({std::abs(v2[0] - v1[0]), std::abs(v2[1] - v1[1]), std::abs(v3[0] - v1[0]), std::abs(v3[1] - v1[1])});
  if (scale == 0.0 || std::abs(total) <= 1e-12 * scale * scale) throw std::domain_error("degenerate triangle");
  return {area(point, v2, v3) / total, area(v1, point, v3) / total, area(v1, v2, point) / total};
}

std::vector<PlacedParticle> geometry_from_exponent(const ExponentMatrix& e) {
  if (e.rows() > 2) {
    throw std::domain_error("unsupported dimension: geometric reading is defined for 1 or 2 block rows, got " +
                            std::to_string(e.rows()));
  }
  const double L = e.circulant_size();
  std::vector<PlacedParticle> placement;
  for (std::size_t c = 0; c < e.cols(); ++c) {
    PlacedParticle p{c, {}};
    for (std::size_t r = 0; r < e.rows(); ++r) {
      const int s = e.at(r, c);
      p.angle.push_back(s == kZeroBlock ? std::nullopt : std::optional<double>(2.0 * std::numbers::pi * s / L));
    }
    placement.push_back(std::move(p));
  }
  return placement;
}

std::vector<double> angular_centroid(const std::vector<PlacedParticle>& placement) {
  std::size_t axes = 0;
  for (const auto& p : placement) axes = std::max(axes, p.angle.size());
  std::vector<double> sum(axes, 0.0);
  std::vector<std::size_t> count(axes, 0);
  for (const auto& p : placement) {
    for (std::size_t r = 0; r < p.angle.size(); ++r) {
      if (!p.angle[r]) continue;
      double a = *p.angle[r];
      if (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
      sum[r] += a;
      ++count[r];
    }
  }
  for (std::size_t r = 0; r < axes; ++r) sum[r] = count[r] ? sum[r] / static_cast<double>(count[r]) : 0.0;
  return sum;
}

int quantize_gap(double angle_a, double angle_b, int circulant_size) {
  if (circulant_size < 1) throw std::domain_error("circulant size must be >= 1");
  const long steps = std::lround((angle_b - angle_a) * circulant_size / (2.0 * std::numbers::pi));
  return static_cast<int>(((steps % circulant_size) + circulant_size) % circulant_size);
}

}  // namespace qcising
