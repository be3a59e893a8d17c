// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "qcising/boltzmann.hpp"
#include "qcising/chargemap.hpp"
#include "qcising/codes.hpp"
#include "qcising/equilibrium.hpp"
#include "qcising/exponent_io.hpp"
#include "qcising/gauge.hpp"
#include "qcising/partition.hpp"
#include "qcising/tanner.hpp"

using namespace qcising;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

ExponentMatrix carbon() {
  return ExponentMatrix(48, {{24, 24, 36, 36, 36, 36}, {1, 7, 13, 19, 25, 31}, {23, 17, 47, 41, 35, 29}});
}

Outcome ac1() {
  Outcome o;
  const char* argv[] = {"qcising", "map", "--mode", "1d4", "--a", "2", "--b", "3"};
  std::ostringstream out, err;
  const int code = cli::run_cli(8, argv, out, err);
  o.require(code == 0, "map exited with " + std::to_string(code) + ": " + err.str());
  if (!o.pass) return o;
  const ExponentMatrix e = parse_exponent(out.str());
  std::vector<int> shifts(e.row(0).begin(), e.row(0).end());
  std::sort(shifts.begin(), shifts.end());
  o.require(e.circulant_size() == 40, "circulant size " + std::to_string(e.circulant_size()));
  o.require(shifts == std::vector<int>{15, 16, 24, 25}, "shift multiset differs");
  o.detail = o.pass ? "c = 40, shifts {16, 15, 24, 25}" : o.detail;
  return o;
}

Outcome ac2() {
  Outcome o;
  const std::vector<std::pair<int, int>> expected = {{1, 4}, {2, 3}, {3, 2}, {4, 1}};
  for (long r1 = 1; r1 <= 4; ++r1) {
    const BalancedPairSet s = map_1d_three(r1, 5 - r1);
    o.require(s.e == 5 && s.pairs == expected, "R1 = " + std::to_string(r1) + " gives different pairs");
  }
  if (o.pass) o.detail = "pairs (1,4) (2,3) (3,2) (4,1) for every R1 + R3 = 5";
  return o;
}

Outcome ac3() {
  Outcome o;
  const ExponentMatrix c = carbon();
  o.require(shbf_gauge_check(c) == std::vector<bool>{true, true, true}, "carbon rows do not all pass");
  std::size_t perturbations = 0;
  for (std::size_t r = 0; r < c.rows(); ++r) {
    for (std::size_t col = 0; col < c.cols(); ++col) {
      auto grid = c.to_grid();
      grid[r][col] = (grid[r][col] + 1) % 48;
      const auto verdict = shbf_gauge_check(ExponentMatrix(48, grid));
      o.require(!verdict[r], "row " + std::to_string(r) + " still passes after +1 at column " + std::to_string(col));
      ++perturbations;
    }
  }
  if (o.pass) o.detail = "3 rows pass mod 48; " + std::to_string(perturbations) + " single +1 perturbations all fail their row";
  return o;
}

Outcome ac4() {
  Outcome o;
  std::mt19937_64 rng(4);
  const int trials = 400;
  int finite = 0;
  for (int t = 0; t < trials; ++t) {
    const int L = 1 + static_cast<int>(rng() % 8);
    const std::size_t m = 1 + rng() % 3;
    const std::size_t n = 1 + rng() % 4;
    std::vector<std::vector<int>> grid(m, std::vector<int>(n));
    for (auto& row : grid)
      for (auto& s : row) s = (rng() % 5 == 0) ? kZeroBlock : static_cast<int>(rng() % L);
    const ExponentMatrix e(L, grid);
    const Girth algebraic = cycle_condition_girth(e, 12);
    const Girth bfs = apply_cap(girth_bfs(lift(e)), 12);
    finite += algebraic.kind == Girth::Kind::finite ? 1 : 0;
    o.require(algebraic == bfs, "disagreement on trial " + std::to_string(t) + ": " + algebraic.to_string() + " vs " + bfs.to_string());
  }
  if (o.pass) o.detail = std::to_string(trials) + " matrices agree (" + std::to_string(finite) + " with finite girth <= 12)";
  return o;
}

Outcome ac5() {
  Outcome o;
  double worst_a = 0.0;
  for (std::size_t n = 3; n <= 12; ++n) worst_a = std::max(worst_a, circle_net_forces(uniform_circle(n, 2 * M_PI)).max_norm);
  o.require(worst_a < 1e-9, "uniform circle force " + std::to_string(worst_a));

  const double uniform = torus_net_forces(uniform_torus(4, 4, 4.0, 4.0)).max_norm;
  const double skewed = torus_net_forces(uniform_torus(4, 4, 4.0, 4.0, 1.0, 0.37)).max_norm;
  o.require(uniform < 1e-9 && skewed < 1e-9, "torus grid force not zero");

  std::mt19937_64 rng(5);
  double worst_c = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 3 + rng() % 8;
    const double c = 10.0;
    ChargeSystem s = uniform_circle(n, c);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    for (auto& p : s.particles) p.x += jitter(rng) * c / static_cast<double>(n);
    s.normalize();
    const RelaxResult r = relax(s, {0.5, 200000, 1e-12});
    const auto gaps = circle_gaps(r.system);
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    var /= static_cast<double>(gaps.size());
    const double ratio = var / (mean * mean);
    worst_c = std::max(worst_c, ratio);
    o.require(ratio < 1e-10, "circle " + std::to_string(t) + " gap variance ratio " + std::to_string(ratio));
  }
  if (o.pass) {
    std::ostringstream d;
    d << "(a) max force " << worst_a << "; (b) torus " << uniform << ", skewed " << skewed << "; (c) worst var/mean^2 " << worst_c;
    o.detail = d.str();
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  std::mt19937_64 rng(6);
  double worst_rel = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 8;
    const RealMatrix a = RealMatrix::from_rows(oracle::random_matrix(rng, n, 0.0, 1.0));
    const double ry = permanent_ryser(a);
    const double bf = permanent_bruteforce(a);
    const double rel = std::fabs(ry - bf) / std::max(std::fabs(bf), 1e-300);
    worst_rel = std::max(worst_rel, rel);
    o.require(rel <= 1e-9, "ryser vs brute force rel " + std::to_string(rel));
  }
  double worst_ratio = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 5 + rng() % 3;
    const RealMatrix a = RealMatrix::from_rows(oracle::random_matrix(rng, n, 0.01, 1.0));
    const BetheResult b = bethe_permanent(a);
    const double perm = permanent_ryser(a);
    o.require(b.converged, "Bethe did not converge on trial " + std::to_string(t));
    o.require(b.value <= perm + 1e-6, "Bethe above permanent on trial " + std::to_string(t));
    worst_ratio = std::max(worst_ratio, b.value / perm);
  }
  if (o.pass) {
    std::ostringstream d;
    d << "max rel diff " << worst_rel << "; max perm_B / perm " << worst_ratio;
    o.detail = d.str();
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst_sum = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t) % 12;
    BoltzmannParams theta = BoltzmannParams::zero(n);
    for (auto& b : theta.bias) b = u(rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) theta.set_weight(i, j, u(rng));
    double total = 0.0;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) total += bm_prob(theta, config_from_index(k, n));
    worst_sum = std::max(worst_sum, std::fabs(total - 1.0));
    o.require(std::fabs(total - 1.0) <= 1e-10, "probabilities sum to " + std::to_string(total));
  }
  double worst_rel = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 12;
    BoltzmannParams theta = BoltzmannParams::zero(n);
    double product = 1.0;
    for (auto& b : theta.bias) {
      b = u(rng);
      product *= 1.0 + std::exp(b);
    }
    const double rel = std::fabs(bm_partition_exact(theta) - product) / product;
    worst_rel = std::max(worst_rel, rel);
    o.require(rel <= 1e-10, "factorized Z rel " + std::to_string(rel));
  }
  if (o.pass) {
    std::ostringstream d;
    d << "max |sum p - 1| " << worst_sum << "; max factorized rel " << worst_rel;
    o.detail = d.str();
  }
  return o;
}

Outcome ac8() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::size_t checked = 0;
  for (std::size_t t : {2u, 3u, 4u}) {
    for (int L : {4, 8}) {
      const std::size_t k = 1 + rng() % 4;
      std::vector<std::vector<int>> grid(t, std::vector<int>(k));
      for (auto& row : grid)
        for (auto& s : row) s = (rng() % 4 == 0) ? kZeroBlock : static_cast<int>(rng() % L);
      const RaCode code{ExponentMatrix(L, grid), t};
      const BinaryMatrix h = ra_build(code);
      const std::size_t len = ra_message_length(code);
      for (int msg = 0; msg < 1000; ++msg) {
        BitVector m(len);
        for (std::size_t b = 0; b < len; ++b) m.set(b, (rng() & 1U) != 0);
        o.require(h.multiply(ra_encode(code, m)).none(), "non-zero syndrome for t = " + std::to_string(t) + ", L = " + std::to_string(L));
        ++checked;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " codewords over t in {2,3,4}, L in {4,8} have zero syndrome";
  return o;
}

Outcome ac9() {
  Outcome o;
  const BinaryMatrix h7 = lift(ExponentMatrix(7, {{1, 2, 4}, {6, 5, 3}}));
  const MinimaReport r7 = codeword_minima_check(h7);
  o.require(r7.pass && r7.exhaustive, "L = 7 code fails the exhaustive check");

  const BinaryMatrix h11 = lift(ExponentMatrix(11, {{10, 9, 8, 7, 6}, {1, 2, 3, 4, 5}}));
  const auto basis = h11.nullspace_basis();
  MinimaReport r11;
  std::string method;
  if (basis.size() <= kDefaultMinimaGuard) {
    r11 = codeword_minima_check(h11);
    method = "exhaustive";
  } else {
    r11 = codeword_minima_certificate(h11);
    method = "linearity certificate over a " + std::to_string(basis.size()) + "-dim code";
  }
  o.require(r11.pass, "L = 11 code fails");

  // Direct spot check on random codewords of the larger code.
  std::mt19937_64 rng(9);
  for (int t = 0; t < 2000 && o.pass; ++t) {
    BitVector x(h11.cols());
    for (const auto& b : basis)
      if (rng() & 1U) x ^= b;
    o.require(syndrome_energy(h11, x) == 0, "sampled codeword has non-zero energy");
    const std::size_t bit = rng() % h11.cols();
    x.flip(bit);
    o.require(syndrome_energy(h11, x) > 0, "sampled neighbour has zero energy");
  }
  if (o.pass) o.detail = "L = 7: " + std::to_string(r7.codewords) + " codewords exhaustive; L = 11: " + method;
  return o;
}

Outcome ac10() {
  Outcome o;
  std::mt19937_64 rng(10);
  for (int t = 0; t < 50; ++t) {
    const std::size_t w = 1 + rng() % 6;
    const std::size_t c = 1 + rng() % w;
    const std::size_t mult = 1 + rng() % 5;
    const int n = 2 + static_cast<int>(rng() % 9);
    std::vector<std::size_t> pool;
    for (std::size_t d = 1; d < w; ++d) pool.push_back(d);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::size_t> offsets = {0};
    offsets.insert(offsets.end(), pool.begin(), pool.begin() + static_cast<long>(c - 1));
    std::sort(offsets.begin(), offsets.end());
    std::vector<std::vector<MetExponentMatrix::Cell>> cells(c, std::vector<MetExponentMatrix::Cell>(w));
    for (auto& row : cells) {
      for (auto& cell : row) {
        cell.push_back(static_cast<int>(rng() % n));
        if (rng() % 3 == 0) {
          const int extra = static_cast<int>(rng() % n);
          if (extra != cell.front()) cell.push_back(extra);
        }
      }
    }
    const MetExponentMatrix sc = sc_construct({w, c, n, mult, MetExponentMatrix(n, cells), offsets});
    o.require(sc.rows() == c * mult && sc.cols() == w * mult, "wrong grid shape");
    for (std::size_t r = 0; r < sc.rows(); ++r) {
      std::size_t nz = 0;
      for (std::size_t col = 0; col < sc.cols(); ++col) nz += sc.at(r, col).empty() ? 0 : 1;
      o.require(nz == w, "CPM-column " + std::to_string(r) + " has " + std::to_string(nz) + " blocks, expected W = " + std::to_string(w));
    }
  }
  if (o.pass) o.detail = "50 parameter sets: every CPM-column holds exactly W non-zero blocks";
  return o;
}

Outcome ac11() {
  Outcome o;
  auto check_matrix = [&](const ExponentMatrix& e) {
    const long n = static_cast<long>(e.cols());
    const long L = e.circulant_size();
    const auto verdict = shbf_gauge_check(e);
    for (std::size_t r = 0; r < e.rows(); ++r) {
      if (!verdict[r]) continue;
      for (long m = 0; m <= 2 * n; ++m) {
        o.require(row_shift_invariance(e, r, m), "gauge lost for m = " + std::to_string(m));
        // Independent arithmetic: the shifted row sum stays a multiple of L.
        long sum = 0;
        for (std::size_t c = 0; c < e.cols(); ++c)
          if (e.at(r, c) != kZeroBlock) sum += (e.at(r, c) + m * (L / n)) % L;
        o.require(sum % L == 0, "shifted sum not a multiple of L");
      }
    }
  };
  check_matrix(carbon());
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const int s = 1 + static_cast<int>(rng() % 8);
    const int L = static_cast<int>(n) * s;
    const std::size_t rows = 1 + rng() % 3;
    std::vector<std::vector<int>> grid(rows, std::vector<int>(n));
    for (auto& row : grid) {
      long sum = 0;
      for (std::size_t c = 0; c + 1 < n; ++c) {
        row[c] = static_cast<int>(rng() % L);
        sum += row[c];
      }
      row[n - 1] = static_cast<int>((L - sum % L) % L);
    }
    const ExponentMatrix e(L, grid);
    const auto verdict = shbf_gauge_check(e);
    o.require(std::all_of(verdict.begin(), verdict.end(), [](bool b) { return b; }), "generator made a failing row");
    check_matrix(e);
  }
  if (o.pass) o.detail = "carbon and 100 random passing matrices keep the gauge for m in 0..2N";
  return o;
}

struct Criterion {
  const char* id;
  double limit_seconds;  // 0 means no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", 0.1, ac1},  {"AC2", 0, ac2},   {"AC3", 0, ac3},   {"AC4", 30, ac4},   {"AC5", 60, ac5},  {"AC6", 120, ac6},
      {"AC7", 30, ac7},   {"AC8", 10, ac8},  {"AC9", 30, ac9},  {"AC10", 0, ac10},  {"AC11", 0, ac11},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      outcome.pass = false;
      outcome.detail = "runtime above the bound; " + outcome.detail;
    }
    char limit[32] = "";
    if (c.limit_seconds > 0) std::snprintf(limit, sizeof limit, ", limit %g s", c.limit_seconds);
    std::printf("%s %s (%.3f s%s) %s\n", c.id, outcome.pass ? "PASS" : "FAIL", seconds, limit, outcome.detail.c_str());
    failures += outcome.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
