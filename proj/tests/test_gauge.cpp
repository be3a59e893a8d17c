#include <doctest.h>

#include <stdexcept>

#include "qcising/codes.hpp"
#include "qcising/gauge.hpp"

using namespace qcising;

namespace {

ExponentMatrix carbon() {
  return ExponentMatrix(48, {{24, 24, 36, 36, 36, 36}, {1, 7, 13, 19, 25, 31}, {23, 17, 47, 41, 35, 29}});
}

}  // namespace

TEST_CASE("radius divisibility") {
  const DivisibilityReport r = radius_divisibility(48, {24, 36});
  CHECK(r.radius_divides == std::vector<bool>{true, false});
  CHECK_FALSE(r.pass);

  const DivisibilityReport ok = radius_divisibility(6, {1, 2});
  CHECK(ok.pass);
  CHECK(ok.sum_divides);
  CHECK(ok.general_divides);

  CHECK_THROWS_AS(radius_divisibility(0, {1}), std::domain_error);
  CHECK_THROWS_AS(radius_divisibility(6, {}), std::domain_error);
  CHECK_THROWS_AS(radius_divisibility(6, {0}), std::domain_error);
}

TEST_CASE("gauge check") {
  CHECK(shbf_gauge_check(carbon()) == std::vector<bool>{true, true, true});
  CHECK(shbf_gauge_check(ExponentMatrix(48, {{0, 0, 0}})) == std::vector<bool>{true});
  CHECK(shbf_gauge_check(ExponentMatrix(48, {{1}})) == std::vector<bool>{false});
  CHECK(shbf_gauge_check(ExponentMatrix(5, {{2, -1, 3}})) == std::vector<bool>{true});
  CHECK(shbf_gauge_check(ExponentMatrix(5, {{2, 1}, {3, 4}}), GaugeAxis::columns) == std::vector<bool>{true, true});
  CHECK(shbf_gauge_check(ExponentMatrix(5, {{2, 1}, {3, 4}})) == std::vector<bool>{false, false});
}

TEST_CASE("shift invariance") {
  const ExponentMatrix c = carbon();
  CHECK(row_shift_invariance(c, 1, 1));
  auto grid = c.to_grid();
  for (int& s : grid[1]) s = (s + 8) % 48;
  CHECK(grid[1] == std::vector<int>{9, 15, 21, 27, 33, 39});
  CHECK(shbf_gauge_check(ExponentMatrix(48, grid))[1]);
  for (long m = 0; m <= 12; ++m)
    for (std::size_t row = 0; row < 3; ++row) CHECK(row_shift_invariance(c, row, m));
  CHECK_THROWS_AS(row_shift_invariance(ExponentMatrix(7, {{1, 2, 4}}), 0, 1), std::domain_error);
  CHECK_THROWS_AS(row_shift_invariance(c, 3, 1), std::domain_error);
}

TEST_CASE("spherical matrix") {
  const SphericalMatrix sm = spherical_from_exponent(carbon());
  CHECK(sm.row_gauge == std::vector<bool>{true, true, true});
  REQUIRE(sm.divisibility.has_value());
  CHECK(sm.divisibility->radii == std::vector<long>{24, 36});
  CHECK_FALSE(sm.divisibility->pass);

  const SphericalMatrix trivial = build_spherical({0}, {0}, {0}, 1);
  CHECK(trivial.row_gauge == std::vector<bool>{true, true, true});

  const SphericalMatrix failing = build_spherical({1, 2}, {3, 4}, {5, 0}, 8);
  CHECK(failing.row_gauge == std::vector<bool>{false, false, false});

  CHECK(format_spherical(sm).rfind("# spherical 48 6\n", 0) == 0);
  CHECK_THROWS_AS(build_spherical({1}, {1, 2}, {1}, 4), std::domain_error);
}

TEST_CASE("radial collapse") {
  const CollapsedSpherical c = collapse_radial(spherical_from_exponent(carbon()));
  CHECK(c.block == 8);
  CHECK(c.radius_shifts == std::vector<int>{0, 0, 4, 4, 4, 4});
  CHECK(c.phi_cell == std::vector<int>{1, 7, 13, 19, 25, 31});
  CHECK(c.theta_cell == std::vector<int>{17, 23, 29, 35, 41, 47});
  const BinaryMatrix h = c.to_binary();
  CHECK(h.rows() == 8 + 96);
  CHECK(h.cols() == 48);
  for (std::size_t r = 0; r < 8; ++r) CHECK(h.row_weight(r) == 6);
  for (std::size_t r = 8; r < h.rows(); ++r) CHECK(h.row_weight(r) == 6);

  const CollapsedSpherical one = collapse_radial(build_spherical({3}, {1}, {2}, 5));
  CHECK(one.block == 5);
  CHECK(one.radius_shifts == std::vector<int>{3});

  const CollapsedSpherical r85 = collapse_radial(build_spherical({17, 34, 51, 68, 0}, {1, 2, 3, 4, 5}, {6, 7, 8, 9, 10}, 85));
  CHECK(r85.block == 17);
  CHECK(r85.radius_shifts == std::vector<int>{0, 0, 0, 0, 0});
  const BinaryMatrix h85 = r85.to_binary();
  for (std::size_t j = 0; j < 5; ++j) CHECK(h85.block(0, 17 * j, 17, 17) == BinaryMatrix::identity(17));

  CHECK_THROWS_AS(collapse_radial(build_spherical({1, 2, 3}, {0, 1, 2}, {0, 1, 2}, 8)), std::domain_error);
}
