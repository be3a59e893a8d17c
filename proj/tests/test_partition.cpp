#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcising/boltzmann.hpp"
#include "qcising/errors.hpp"
#include "qcising/partition.hpp"

using namespace qcising;

TEST_CASE("permanent by brute force") {
  CHECK(permanent_bruteforce(RealMatrix::identity(4)) == 1.0);
  CHECK(permanent_bruteforce(RealMatrix(3, 3, 1.0)) == 6.0);
  CHECK(permanent_bruteforce(RealMatrix::from_rows({{1, 2}, {3, 4}})) == 10.0);
  CHECK_THROWS_AS(permanent_bruteforce(RealMatrix(10, 10, 1.0)), ResourceError);
  CHECK_THROWS_AS(permanent_bruteforce(RealMatrix(2, 3, 1.0)), std::domain_error);
  CHECK_THROWS_AS(permanent_bruteforce(RealMatrix::from_rows({{1, -1}, {1, 1}})), std::domain_error);
}

TEST_CASE("permanent by Ryser") {
  CHECK(permanent_ryser(RealMatrix::identity(8)) == doctest::Approx(1.0));
  CHECK(permanent_ryser(RealMatrix(5, 5, 1.0)) == doctest::Approx(120.0));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const auto rows = oracle::random_matrix(rng, n, 0.0, 1.0);
    const RealMatrix a = RealMatrix::from_rows(rows);
    const double expected = oracle::permanent_laplace(rows);
    CHECK(oracle::close_rel(permanent_ryser(a), expected, 1e-9));
    CHECK(oracle::close_rel(permanent_bruteforce(a), expected, 1e-9));
  }
  const RealMatrix big = RealMatrix::from_rows(oracle::random_matrix(rng, 13, 0.0, 1.0));
  CHECK(permanent_ryser(big, 1) == permanent_ryser(big, 3));
  CHECK_THROWS_AS(permanent_ryser(RealMatrix(21, 21, 1.0)), ResourceError);
}

TEST_CASE("Bethe permanent") {
  CHECK(bethe_permanent(RealMatrix::from_rows({{2.5}})).value == 2.5);

  // All-ones matrix: the fixed point has gamma = 1/n, so perm_B = n^n ((n-1)/n)^(n(n-1)).
  for (std::size_t n = 2; n <= 6; ++n) {
    const BetheResult r = bethe_permanent(RealMatrix(n, n, 1.0));
    const double nd = static_cast<double>(n);
    const double closed = std::pow(nd, nd) * std::pow((nd - 1) / nd, nd * (nd - 1));
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(closed).epsilon(1e-7));
    CHECK(r.value <= permanent_ryser(RealMatrix(n, n, 1.0)) + 1e-9);
  }
  CHECK(bethe_permanent(RealMatrix(3, 3, 1.0)).value == doctest::Approx(64.0 / 27.0).epsilon(1e-7));

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng() % 3;
    const RealMatrix a = RealMatrix::from_rows(oracle::random_matrix(rng, n, 0.05, 1.0));
    const BetheResult r = bethe_permanent(a);
    REQUIRE(r.converged);
    CHECK(r.value <= permanent_ryser(a) * (1 + 1e-9));
    // Beliefs are doubly stochastic at the fixed point.
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        row += r.beliefs.at(i, j);
        col += r.beliefs.at(j, i);
      }
      CHECK(row == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(col == doctest::Approx(1.0).epsilon(1e-6));
    }
  }

  // 2 x 2: the entropy terms cancel, so F_Bethe is linear in the belief and has no interior
  // fixed point unless a00 a11 = a01 a10. The run is flagged, not reported as converged.
  const BetheResult flat = bethe_permanent(RealMatrix::from_rows({{0.8, 0.45}, {0.9, 0.7}}));
  CHECK_FALSE(flat.converged);
  CHECK(flat.iterations == BetheOptions{}.max_iter);
  CHECK(flat.residual > BetheOptions{}.tol);
  CHECK(bethe_permanent(RealMatrix::from_rows({{1, 2}, {3, 6}})).converged);

  // A near-permutation matrix is exact in the limit.
  RealMatrix perm(4, 4, 1e-9);
  for (std::size_t i = 0; i < 4; ++i) perm.at(i, (i + 1) % 4) = 1.0;
  CHECK(bethe_permanent(perm).value == doctest::Approx(1.0).epsilon(1e-6));

  const BetheResult capped = bethe_permanent(RealMatrix::from_rows(oracle::random_matrix(rng, 5, 0.1, 1.0)), {0.5, 1e-30, 3, 1e-12});
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 3);
  CHECK(capped.residual_history.size() == 3);
  CHECK(bethe_residual_csv(capped).rfind("iteration,residual\n", 0) == 0);
}

TEST_CASE("determinant normalization") {
  CHECK(det_normalization(RealMatrix::identity(3)) == doctest::Approx(1.0));
  CHECK(det_normalization(RealMatrix::from_rows({{2, 0}, {0, 4}})) == doctest::Approx(0.125));
  CHECK_THROWS_AS(det_normalization(RealMatrix::from_rows({{1, 2}, {2, 4}})), NumericError);
  CHECK_THROWS_AS(det_normalization(RealMatrix(3, 3, 0.0)), NumericError);

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    auto rows = oracle::random_matrix(rng, 5, -1.0, 1.0);
    for (std::size_t i = 0; i < 5; ++i) rows[i][i] += 3.0;
    const double det = oracle::determinant_laplace(rows);
    CHECK(oracle::close_rel(det_normalization(RealMatrix::from_rows(rows)), 1.0 / std::fabs(det), 1e-9));
  }
}

TEST_CASE("partition from energies") {
  CHECK(partition_from_energies({0, 0}) == doctest::Approx(2.0));
  CHECK(partition_from_energies({std::log(2.0)}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(partition_from_energies({}), std::domain_error);
  CHECK(log_partition_from_energies({3, 1, 2}) == log_partition_from_energies({1, 2, 3}));

  BoltzmannParams t = BoltzmannParams::zero(6);
  t.bias = {0.2, -0.3, 0.9, 0.0, 1.1, -0.7};
  t.set_weight(0, 3, 0.4);
  t.set_weight(2, 5, -1.3);
  std::vector<double> energies;
  for (std::uint64_t i = 0; i < 64; ++i) energies.push_back(bm_energy(t, config_from_index(i, 6)));
  CHECK(oracle::close_rel(partition_from_energies(energies), bm_partition_exact(t), 1e-10));
}

TEST_CASE("RBM marginal energy") {
  RbmParams zero{RealMatrix(3, 2), RealMatrix(3, 2), {0, 0, 0}, {0, 0}, std::nullopt};
  CHECK(rbm_marginal_energy({0, 0, 0}, {0, 0}, zero) == doctest::Approx(2 * std::log(2.0)));
  RbmParams bias = zero;
  bias.b_v = {1, 1, 1};
  CHECK(rbm_marginal_energy({1, 1, 1}, {0, 0}, bias) == doctest::Approx(2 * std::log(2.0) + 3));

  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t nv = 2 + rng() % 4;
    const std::size_t nh = 1 + rng() % 4;
    const std::size_t nx = 1 + rng() % 3;
    auto fill = [&](std::size_t r, std::size_t c) {
      std::vector<std::vector<double>> m(r, std::vector<double>(c));
      for (auto& row : m)
        for (auto& v : row) v = u(rng);
      return m;
    };
    const auto w_vh = fill(nv, nh);
    const auto w_vx = fill(nv, nx);
    const auto w_hx = fill(nh, nx);
    std::vector<double> b_v(nv), b_h(nh);
    for (auto& v : b_v) v = u(rng);
    for (auto& v : b_h) v = u(rng);
    std::vector<std::uint8_t> v8(nv), x8(nx);
    std::vector<int> vi(nv), xi(nx);
    for (std::size_t i = 0; i < nv; ++i) vi[i] = v8[i] = rng() & 1U;
    for (std::size_t i = 0; i < nx; ++i) xi[i] = x8[i] = rng() & 1U;
    const RbmParams theta{RealMatrix::from_rows(w_vh), RealMatrix::from_rows(w_vx), b_v, b_h, RealMatrix::from_rows(w_hx)};
    CHECK(rbm_marginal_energy(v8, x8, theta) ==
          doctest::Approx(oracle::rbm_hidden_sum(vi, xi, w_vh, w_vx, w_hx, b_v, b_h)).epsilon(1e-10));
  }

  // Without w_hx the row-j product of W^{vh} is used, which needs |x| = |h| <= |v|.
  const auto w_vh = std::vector<std::vector<double>>{{0.5, -0.2}, {0.1, 0.3}, {-0.4, 0.7}};
  const RbmParams plain{RealMatrix::from_rows(w_vh), RealMatrix(3, 2), {0, 0, 0}, {0.1, -0.1}, std::nullopt};
  const std::vector<std::vector<double>> w_hx = {{0.5, -0.2}, {0.1, 0.3}};  // rows 0..|h|-1 of W^{vh}
  CHECK(rbm_marginal_energy({1, 0, 1}, {1, 1}, plain) ==
        doctest::Approx(oracle::rbm_hidden_sum({1, 0, 1}, {1, 1}, w_vh, {{0, 0}, {0, 0}, {0, 0}}, w_hx, {0, 0, 0}, {0.1, -0.1})));
  const RbmParams mismatched{RealMatrix::from_rows(w_vh), RealMatrix(3, 3), {0, 0, 0}, {0.1, -0.1}, std::nullopt};
  CHECK_THROWS_AS(rbm_marginal_energy({1, 0, 1}, {1, 1, 0}, mismatched), std::domain_error);
}
