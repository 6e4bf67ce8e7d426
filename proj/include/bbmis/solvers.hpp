#pragma once

// Search procedures over the binary include/exclude tree that fixes vertices
// in index order 0..n-1, plus the exact oracles used to check them.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>

#include "bbmis/graph.hpp"

namespace bbmis {

/// Partial solution at a search-tree node. `chosen` is a subset of the first
/// `level` vertices; potential = size + n - level.
struct SearchNode {
  std::size_t level = 0;
  VertexSet chosen;
  std::size_t size = 0;
  std::size_t potential = 0;
};

struct SolveResult {
  std::size_t alpha = 0;
  VertexSet witness;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t leaves_seen = 0;
  std::chrono::nanoseconds elapsed{0};
};

inline constexpr std::uint64_t kDefaultNodeCap = 1'000'000'000ULL;
inline constexpr std::uint64_t kDefaultFrontierCap = 100'000'000ULL;
inline constexpr std::size_t kBruteForceMaxOrder = 25;
inline constexpr std::size_t kCountMaxOrder = 50;

/// u(S) = |S| + (n - level). Requires size <= level <= n.
std::size_t potential(std::size_t size, std::size_t level, std::size_t n);

/// Exact independence number by enumerating all 2^n subsets (n <= 25).
SolveResult brute_force_alpha(const Graph& g);

/// Number of independent sets, empty set included, by the recurrence
/// #IS(G) = #IS(G - v) + #IS(G - N[v]) on a maximum-degree vertex v (n <= 50).
std::uint64_t count_independent_sets(const Graph& g);

/// Depth-first traversal pruned only on infeasibility. Every feasible node of
/// every level is expanded, so nodes_expanded = sum_i #IS(G_i).
SolveResult exhaustive_search(const Graph& g, std::uint64_t node_cap = kDefaultNodeCap);

/// Best-first branch and bound: pops the frontier node of largest potential
/// (ties: deeper level, then the include branch, then most recently pushed)
/// and stops at the first popped leaf, which is a maximum independent set.
/// nodes_expanded counts popped nodes; leaves_seen counts generated leaves.
SolveResult bnb_best_first(const Graph& g, std::uint64_t frontier_cap = kDefaultFrontierCap);

/// Number of feasible search-tree nodes whose potential is at least `alpha`,
/// by depth-first traversal. `alpha` must be the independence number of g.
std::uint64_t bnb_census(const Graph& g, std::size_t alpha, std::uint64_t node_cap = kDefaultNodeCap);

/// Read-only view of a node handed to walk_feasible_tree callbacks.
struct NodeView {
  std::size_t level;
  std::size_t size;
  std::size_t potential;
  /// Potential of the parent; equals `potential` at the root.
  std::size_t parent_potential;
  std::span<const std::size_t> chosen;
};


/// Depth-first walk over feasible nodes, include child first. The callback
/// returns whether to descend below the node it was given.
template <class OnNode>
void walk_feasible_tree(const Graph& g, OnNode&& on_node);

}  // namespace bbmis

#include "bbmis/detail/tree_walk.hpp"
