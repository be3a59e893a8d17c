#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcising/chargemap.hpp"

using namespace qcising;

namespace {

std::vector<int> sorted_row(const ExponentMatrix& e, std::size_t r) {
  std::vector<int> v(e.row(r).begin(), e.row(r).end());
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<ChargedParticle> particles(const std::vector<std::array<double, 2>>& xy, const std::string& cell = "") {
  std::vector<ChargedParticle> out;
  for (std::size_t i = 0; i < xy.size(); ++i) out.push_back({std::to_string(i + 1), 1.0, xy[i][0], xy[i][1], cell});
  return out;
}

}  // namespace

TEST_CASE("three particles on a line") {
  const BalancedPairSet five = map_1d_three(2, 3);
  CHECK(five.e == 5);
  CHECK(five.pairs == std::vector<std::pair<int, int>>{{1, 4}, {2, 3}, {3, 2}, {4, 1}});
  CHECK(map_1d_three(1, 1).pairs == std::vector<std::pair<int, int>>{{1, 1}});
  for (long e = 2; e < 30; ++e) {
    for (auto [a, b] : map_1d_three(1, e - 1).pairs) CHECK((a + b) % e == 0);
  }
  const ExponentMatrix m = balanced_pairs_matrix(five);
  CHECK(m == ExponentMatrix(5, {{1, 4}, {2, 3}, {3, 2}, {4, 1}}));
  CHECK_THROWS_AS(map_1d_three(0, 3), std::domain_error);
}

TEST_CASE("four particles on a line") {
  const LabeledRow r = map_1d_four(2, 3);
  CHECK(r.matrix.circulant_size() == 40);
  CHECK(sorted_row(r.matrix, 0) == std::vector<int>{15, 16, 24, 25});
  CHECK(r.labels.size() == 4);

  const LabeledRow ones = map_1d_four(1, 1);
  CHECK(ones.matrix.circulant_size() == 6);
  CHECK(std::vector<int>(ones.matrix.row(0).begin(), ones.matrix.row(0).end()) == std::vector<int>{3, 3, 2, 4});

  for (long a = 1; a < 12; ++a) {
    for (long b = 1; b < 12; ++b) {
      const LabeledRow x = map_1d_four(a, b);
      const int c = x.matrix.circulant_size();
      CHECK(c % (a + b) == 0);
      CHECK(c % (a + 2 * b) == 0);
      CHECK(x.matrix.at(0, 0) + x.matrix.at(0, 1) == c);
      CHECK(x.matrix.at(0, 2) + x.matrix.at(0, 3) == c);
    }
  }
  CHECK_THROWS_AS(map_1d_four(0, 2), std::domain_error);
}

TEST_CASE("two-dimensional cell") {
  const CellMap sym = map_2d_cell(particles({{1, 1}, {1, 1}, {1, 1}, {1, 1}}));
  CHECK(sym.matrix == ExponentMatrix(4, {{1, 1, 1, 1}, {1, 1, 1, 1}}));

  const CellMap cm = map_2d_cell(particles({{1, 2}, {2, 2}, {3, 2}, {4, 2}}));
  CHECK(cm.lx == 10);
  CHECK(cm.ly == 8);
  CHECK(cm.matrix == ExponentMatrix(40, {{4, 8, 12, 16}, {10, 10, 10, 10}}));
  CHECK(cm.particle_ids == std::vector<std::string>{"1", "2", "3", "4"});

  CHECK_THROWS_AS(map_2d_cell(particles({{1, 1}})), std::domain_error);
  CHECK_THROWS_AS(map_2d_cell(particles({{1.5, 1}, {1, 1}})), std::domain_error);
  CHECK_THROWS_AS(map_2d_cell(particles({{0, 1}, {1, 1}})), std::domain_error);
}

TEST_CASE("coupled cells") {
  auto a = particles({{1, 1}, {2, 1}, {1, 2}, {2, 2}}, "a");
  auto b = particles({{2, 1}, {3, 1}, {2, 2}, {3, 3}}, "b");
  b[0].id = "2";
  b[1].id = "5";
  b[2].id = "4";
  b[3].id = "6";
  const auto maps = map_coupled_cells({a, b});
  REQUIRE(maps.size() == 2);
  CHECK(std::count(maps[0].particle_ids.begin(), maps[0].particle_ids.end(), "2") == 1);
  CHECK(std::count(maps[1].particle_ids.begin(), maps[1].particle_ids.end(), "2") == 1);
  CHECK(std::count(maps[1].particle_ids.begin(), maps[1].particle_ids.end(), "4") == 1);

  CHECK(map_coupled_cells({a}).front().matrix == map_2d_cell(a).matrix);

  auto conflict = b;
  conflict[0].x = 7;
  CHECK_THROWS_AS(map_coupled_cells({a, conflict}), std::domain_error);

  std::vector<ChargedParticle> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const auto groups = group_cells(all);
  REQUIRE(groups.size() == 2);
  CHECK(groups[1].front().cell == "b");
}

TEST_CASE("particles csv") {
  const auto ps = parse_particles_csv("x,id,y,q,cell\n1,p,2,3,c0\n4,r,5,6,c1\n");
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].id == "p");
  CHECK(ps[0].x == 1);
  CHECK(ps[0].q == 3);
  CHECK(ps[1].cell == "c1");
  CHECK_THROWS(parse_particles_csv("id,q,x\n1,1,1\n"));
  CHECK_THROWS(parse_particles_csv("id,q,x,y\n1,1,z,1\n"));
}

TEST_CASE("hexagonal rotation") {
  const auto nodes = hexagon_nodes(60.0);
  REQUIRE(nodes.size() == 7);

  const HexRotationMap zero = hexagonal_rotation_map(60.0, 0.0, 6, nodes);
  for (std::size_t c = 0; c < 7; ++c) CHECK(zero.matrix.at(0, c) == 0);

  std::vector<std::array<double, 2>> line = {{0, 0}, {60, 0}, {0, 60}, {-60, 0}, {0, -60}, {30, 30}, {-30, 30}};
  const HexRotationMap m = hexagonal_rotation_map(60.0, std::numbers::pi / 6, 6, line);
  CHECK(m.dr == 10);
  CHECK(m.matrix.at(0, 0) == 0);
  CHECK(m.matrix.at(1, 0) == 0);
  CHECK(m.delta[1][0] == doctest::Approx(60 * (1 - std::cos(std::numbers::pi / 6))));
  CHECK(m.delta[1][0] == doctest::Approx(8.038).epsilon(1e-4));
  CHECK(m.quotient[1][0] == 0);
  CHECK(m.matrix.at(0, 1) == 0);
  CHECK(m.delta[2][1] == doctest::Approx(60 - 60 * std::sin(std::numbers::pi / 6)));
  CHECK(m.matrix.at(1, 2) == 3);

  CHECK_THROWS_AS(hexagonal_rotation_map(5.0, 0.3, 6, nodes), std::domain_error);
}

TEST_CASE("barycentric") {
  const std::array<double, 2> v1{0, 0}, v2{1, 0}, v3{0, 1};
  const auto c = barycentric({1.0 / 3, 1.0 / 3}, v1, v2, v3);
  for (double l : c) CHECK(l == doctest::Approx(1.0 / 3));
  const auto at_v1 = barycentric(v1, v1, v2, v3);
  CHECK(at_v1[0] == doctest::Approx(1.0));
  CHECK(at_v1[1] == doctest::Approx(0.0));
  const auto mid = barycentric({0.5, 0.5}, v1, v2, v3);
  CHECK(mid[0] == doctest::Approx(0.0));
  CHECK(mid[1] == doctest::Approx(0.5));
  CHECK(mid[2] == doctest::Approx(0.5));
  CHECK_THROWS_AS(barycentric({0, 0}, v1, v2, {2, 0}), std::domain_error);
}

TEST_CASE("geometry from exponent") {
  const auto five = geometry_from_exponent(ExponentMatrix(11, {{10, 9, 8, 7, 6}, {1, 2, 3, 4, 5}}));
  REQUIRE(five.size() == 5);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(*five[j].angle[0] == doctest::Approx(2 * std::numbers::pi * (10 - static_cast<int>(j)) / 11));
    CHECK(*five[j].angle[1] == doctest::Approx(2 * std::numbers::pi * (1 + static_cast<int>(j)) / 11));
  }

  const auto origin = geometry_from_exponent(ExponentMatrix(3, {{0}, {0}}));
  REQUIRE(origin.size() == 1);
  CHECK(*origin[0].angle[0] == 0.0);
  CHECK(*origin[0].angle[1] == 0.0);

  const auto tri = geometry_from_exponent(ExponentMatrix(7, {{1, 2, 4}, {6, 5, 3}}));
  const auto centroid = angular_centroid(tri);
  REQUIRE(centroid.size() == 2);
  // Representatives 1, 2, -3 and -1, -2, 3 average to the origin.
  CHECK(std::fabs(centroid[0]) < 1e-12);
  CHECK(std::fabs(centroid[1]) < 1e-12);

  CHECK_THROWS_AS(geometry_from_exponent(ExponentMatrix(3, {{0}, {0}, {0}})), std::domain_error);

  const auto unset = geometry_from_exponent(ExponentMatrix(5, {{-1, 2}}));
  CHECK_FALSE(unset[0].angle[0].has_value());

  for (int L = 2; L < 20; ++L)
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b)
        CHECK(quantize_gap(2 * std::numbers::pi * a / L, 2 * std::numbers::pi * b / L, L) == ((b - a) % L + L) % L);
}
