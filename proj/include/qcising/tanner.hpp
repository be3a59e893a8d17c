#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcising/binary_matrix.hpp"
#include "qcising/circulant.hpp"

namespace qcising {

/// Bipartite graph with one edge per 1-entry of H: checks are rows, variables columns.
struct TannerGraph {
  std::size_t num_variables = 0;
  std::size_t num_checks = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (check, variable), row-major
  std::vector<std::vector<std::size_t>> variable_neighbors;
  std::vector<std::vector<std::size_t>> check_neighbors;
};

TannerGraph build_tanner(const BinaryMatrix& h);

struct Girth {
  enum class Kind { finite, acyclic, above_cap };

  Kind kind = Kind::acyclic;
  int length = 0;  // the girth when finite, the cap when above_cap

  static Girth finite(int length) { return {Kind::finite, length}; }
  static Girth acyclic() { return {Kind::acyclic, 0}; }
  static Girth above(int cap) { return {Kind::above_cap, cap}; }

  bool operator==(const Girth&) const = default;
  std::string to_string() const;
};

inline constexpr int kDefaultGirthCap = 12;

/// Exact shortest cycle length by BFS from every node.
Girth girth_bfs(const BinaryMatrix& h);

/// Maps an exact girth onto the capped scale used by cycle_condition_girth.
Girth apply_cap(Girth g, int cap);

/// Smallest 2l <= cap admitting a closed non-backtracking alternating walk through
/// non-zero cells whose alternating shift sum vanishes mod L. A forest-shaped base
/// graph yields acyclic; otherwise no such walk up to the cap yields above_cap.
Girth cycle_condition_girth(const ExponentMatrix& e, int cap = kDefaultGirthCap);

struct TrappingSet {
  std::size_t a = 0;  // variable count
  std::size_t b = 0;  // checks adjacent an odd number of times
  std::vector<std::size_t> variables;
  std::vector<std::size_t> odd_checks;
  std::vector<std::size_t> even_checks;

  bool operator==(const TrappingSet&) const = default;
};

struct TrappingSetOptions {
  std::size_t a_max = 4;
  std::size_t b_max = 4;
  std::uint64_t budget = 10'000'000;  // bound on C(n, a_max)
};

/// Checks adjacent to `variables` an odd number of times, ascending.
std::vector<std::size_t> odd_degree_checks(const BinaryMatrix& h, const std::vector<std::size_t>& variables);

/// Every connected variable subset of size <= a_max with b <= b_max, sorted by
/// (a, b, variables). Throws ResourceError when C(n, a_max) exceeds the budget.
std::vector<TrappingSet> find_trapping_sets(const BinaryMatrix& h, const TrappingSetOptions& options);

/// CSV with header "a,b,variables"; variables are space separated.
std::string trapping_sets_csv(const std::vector<TrappingSet>& sets);

inline constexpr std::size_t kDefaultNullspaceGuard = 24;

/// Minimum weight over non-zero codewords; std::nullopt for the trivial code {0}.
/// Throws ResourceError when the nullspace dimension exceeds `guard`.
std::optional<std::size_t> min_distance_exhaustive(const BinaryMatrix& h,
                                                   std::size_t guard = kDefaultNullspaceGuard);

/// Protograph multigraph of a MET matrix: one node per block row (check) and block
/// column (variable), one edge per shift in each cell.
struct MultiGraph {
  struct Edge {
    std::size_t check;
    std::size_t variable;
    int shift;
  };
  std::size_t num_checks = 0;
  std::size_t num_variables = 0;
  std::vector<Edge> edges;  // row-major, shifts ascending within a cell
};

MultiGraph export_multigraph(const MetExponentMatrix& e);

/// Graphviz DOT text (undirected multigraph, parallel edges kept).
std::string to_dot(const MultiGraph& g);

}  // namespace qcising
