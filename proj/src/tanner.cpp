#include "qcising/tanner.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qcising/codes.hpp"
#include "qcising/errors.hpp"

namespace qcising {

TannerGraph build_tanner(const BinaryMatrix& h) {
  TannerGraph g;
  g.num_checks = h.rows();
  g.num_variables = h.cols();
  g.variable_neighbors.resize(h.cols());
  g.check_neighbors.resize(h.rows());
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) {
      if (!h.get(r, c)) continue;
      g.edges.emplace_back(r, c);
      g.check_neighbors[r].push_back(c);
      g.variable_neighbors[c].push_back(r);
    }
  }
  return g;
}

std::string Girth::to_string() const {
  switch (kind) {
    case Kind::finite:
      return std::to_string(length);
    case Kind::acyclic:
      return "acyclic";
    case Kind::above_cap:
      return ">" + std::to_string(length);
  }
  return {};
}

Girth girth_bfs(const BinaryMatrix& h) {
  const TannerGraph g = build_tanner(h);
  const std::size_t n = g.num_variables;
  const std::size_t total = n + g.num_checks;
  // Variables are nodes [0, n), checks [n, n + m).
  auto neighbors = [&](std::size_t v) -> const std::vector<std::size_t>& {
    return v < n ? g.variable_neighbors[v] : g.check_neighbors[v - n];
  };
  auto node_of = [&](std::size_t from, std::size_t idx) { return from < n ? idx + n : idx; };

  constexpr int kUnseen = -1;
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(total);
  std::vector<std::size_t> parent(total);
  std::queue<std::size_t> queue;
  for (std::size_t s = 0; s < total; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[s] = 0;
    parent[s] = s;
    queue = {};
    queue.push(s);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      if (2 * dist[u] + 1 >= best) break;
      for (std::size_t idx : neighbors(u)) {
        const std::size_t w = node_of(u, idx);
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best == std::numeric_limits<int>::max() ? Girth::acyclic() : Girth::finite(best);
}

Girth apply_cap(Girth g, int cap) {
  if (g.kind == Girth::Kind::finite && g.length > cap) return Girth::above(cap);
  if (g.kind == Girth::Kind::above_cap) return Girth::above(cap);
  return g;
}

namespace {

bool base_graph_is_forest(const ExponentMatrix& e) {
  // Union-find over rows [0, m) and columns [m, m + n); a cycle closes on a repeated root.
  const std::size_t m = e.rows();
  std::vector<std::size_t> root(m + e.cols());
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      if (e.at(r, c) == kZeroBlock) continue;
      const auto a = find(r);
      const auto b = find(m + c);
      if (a == b) return false;
      root[a] = b;
    }
  }
  return true;
}

class WalkSearch {
 public:
  WalkSearch(const ExponentMatrix& e, std::size_t half_length) : e_(e), half_(half_length) {}

  bool exists() {
    for (std::size_t r = 0; r < e_.rows(); ++r) {
      for (std::size_t c = 0; c < e_.cols(); ++c) {
        if (e_.at(r, c) == kZeroBlock) continue;
        r0_ = r;
        c0_ = c;
        if (extend(r, c, 0, 0)) return true;
      }
    }
    return false;
  }

 private:
  // Standing on cell (row, col) after `step` horizontal moves; `sum` is the shift sum so far.
  bool extend(std::size_t row, std::size_t col, std::size_t step, long sum) {
    const long L = e_.circulant_size();
    const long enter = e_.at(row, col);
    for (std::size_t next_col = 0; next_col < e_.cols(); ++next_col) {
      if (next_col == col || e_.at(row, next_col) == kZeroBlock) continue;
      const long s = sum + e_.at(row, next_col) - enter;
      if (step + 1 == half_) {
        // Closing vertical move back into the starting cell.
        if (next_col == c0_ && row != r0_ && ((s % L) + L) % L == 0) return true;
        continue;
      }
      for (std::size_t next_row = 0; next_row < e_.rows(); ++next_row) {
        if (next_row == row || e_.at(next_row, next_col) == kZeroBlock) continue;
        if (extend(next_row, next_col, step + 1, s)) return true;
      }
    }
    return false;
  }

  const ExponentMatrix& e_;
  std::size_t half_;
  std::size_t r0_ = 0;
  std::size_t c0_ = 0;
};

}  // namespace

Girth cycle_condition_girth(const ExponentMatrix& e, int cap) {
  if (base_graph_is_forest(e)) return Girth::acyclic();
  for (int len = 4; len <= cap; len += 2) {
    WalkSearch search(e, static_cast<std::size_t>(len / 2));
    if (search.exists()) return Girth::finite(len);
  }
  return Girth::above(cap);
}

std::vector<std::size_t> odd_degree_checks(const BinaryMatrix& h, const std::vector<std::size_t>& variables) {
  std::vector<std::size_t> odd;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    unsigned count = 0;
    for (auto v : variables) count += h.get(r, v) ? 1U : 0U;
    if (count & 1U) odd.push_back(r);
  }
  return odd;
}

namespace {

std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  // Each prefix product is C(n - k + i, i), an integer; long double holds it exactly below 2^64.
  long double acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc >= static_cast<long double>(kMax)) return kMax;
  }
  return static_cast<std::uint64_t>(acc + 0.5L);
}

class SubsetEnumerator {
 public:
  SubsetEnumerator(const BinaryMatrix& h, const TrappingSetOptions& options)
      : graph_(build_tanner(h)), options_(options), check_count_(h.rows(), 0) {}

  std::vector<TrappingSet> run() {
    recurse(0);
    std::sort(found_.begin(), found_.end(), [](const TrappingSet& x, const TrappingSet& y) {
      return std::tie(x.a, x.b, x.variables) < std::tie(y.a, y.b, y.variables);
    });
    return std::move(found_);
  }

 private:
  void recurse(std::size_t first) {
    if (chosen_.size() == options_.a_max) return;
    for (std::size_t v = first; v < graph_.num_variables; ++v) {
      chosen_.push_back(v);
      for (auto c : graph_.variable_neighbors[v]) ++check_count_[c];
      record();
      recurse(v + 1);
      for (auto c : graph_.variable_neighbors[v]) --check_count_[c];
      chosen_.pop_back();
    }
  }

  void record() {
    std::size_t odd = 0;
    for (auto v : chosen_) {
      for (auto c : graph_.variable_neighbors[v]) {
        // Count each odd check once: attribute it to its first chosen neighbor.
        if ((check_count_[c] & 1U) && first_chosen_neighbor(c) == v) ++odd;
      }
    }
    if (odd > options_.b_max || !connected()) return;

    TrappingSet ts;
    ts.a = chosen_.size();
    ts.b = odd;
    ts.variables = chosen_;
    std::vector<std::size_t> checks;
    for (auto v : chosen_) checks.insert(checks.end(), graph_.variable_neighbors[v].begin(), graph_.variable_neighbors[v].end());
    std::sort(checks.begin(), checks.end());
    checks.erase(std::unique(checks.begin(), checks.end()), checks.end());
    for (auto c : checks) ((check_count_[c] & 1U) ? ts.odd_checks : ts.even_checks).push_back(c);
    found_.push_back(std::move(ts));
  }

  std::size_t first_chosen_neighbor(std::size_t check) const {
    for (auto v : chosen_) {
      const auto& nb = graph_.variable_neighbors[v];
      if (std::find(nb.begin(), nb.end(), check) != nb.end()) return v;
    }
    return graph_.num_variables;
  }

  bool connected() const {
    if (chosen_.size() <= 1) return true;
    std::vector<bool> reached(chosen_.size(), false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < chosen_.size(); ++j) {
        if (reached[j] || !share_check(chosen_[i], chosen_[j])) continue;
        reached[j] = true;
        ++count;
        stack.push_back(j);
      }
    }
    return count == chosen_.size();
  }

  bool share_check(std::size_t u, std::size_t v) const {
    const auto& a = graph_.variable_neighbors[u];
    const auto& b = graph_.variable_neighbors[v];
    return std::any_of(a.begin(), a.end(), [&](std::size_t c) { return std::find(b.begin(), b.end(), c) != b.end(); });
  }

  TannerGraph graph_;
  TrappingSetOptions options_;
  std::vector<unsigned> check_count_;
  std::vector<std::size_t> chosen_;
  std::vector<TrappingSet> found_;
};

}  // namespace

std::vector<TrappingSet> find_trapping_sets(const BinaryMatrix& h, const TrappingSetOptions& options) {
  if (options.a_max == 0) throw std::domain_error("a_max must be >= 1");
  const std::uint64_t work = saturating_binomial(h.cols(), std::min<std::uint64_t>(options.a_max, h.cols()));
  if (work > options.budget) {
    std::ostringstream msg;
    msg << "trapping-set search needs C(" << h.cols() << ", " << options.a_max << ") = " << work
        << " subsets, above the budget of " << options.budget;
    throw ResourceError("ts-budget", msg.str());
  }
  return SubsetEnumerator(h, options).run();
}

std::string trapping_sets_csv(const std::vector<TrappingSet>& sets) {
  std::ostringstream out;
  out << "a,b,variables\n";
  for (const auto& ts : sets) {
    out << ts.a << ',' << ts.b << ',';
    for (std::size_t i = 0; i < ts.variables.size(); ++i) out << (i ? " " : "") << ts.variables[i];
    out << '\n';
  }
  return out.str();
}

std::optional<std::size_t> min_distance_exhaustive(const BinaryMatrix& h, std::size_t guard) {
  const auto basis = h.nullspace_basis();
  if (basis.empty()) return std::nullopt;
  if (basis.size() > guard) {
    std::ostringstream msg;
    msg << "nullspace dimension " << basis.size() << " exceeds the exhaustive-enumeration guard " << guard;
    throw ResourceError("nullspace-dim", msg.str());
  }
  // Gray-code walk over all non-zero combinations of the basis.
  BitVector word(h.cols());
  std::size_t best = h.cols();
  const std::uint64_t count = std::uint64_t{1} << basis.size();
  for (std::uint64_t i = 1; i < count; ++i) {
    word ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    best = std::min(best, word.weight());
  }
  return best;
}

MultiGraph export_multigraph(const MetExponentMatrix& e) {
  MultiGraph g;
  g.num_checks = e.rows();
  g.num_variables = e.cols();
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      for (int s : e.at(r, c)) g.edges.push_back({r, c, s});
    }
  }
  return g;
}

std::string to_dot(const MultiGraph& g) {
  std::ostringstream out;
  out << "graph protograph {\n";
  for (std::size_t c = 0; c < g.num_checks; ++c) out << "  c" << c << " [shape=box];\n";
  for (std::size_t v = 0; v < g.num_variables; ++v) out << "  v" << v << " [shape=circle];\n";
  for (const auto& edge : g.edges) {
    out << "  c" << edge.check << " -- v" << edge.variable << " [label=\"" << edge.shift << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace qcising
