#pragma once

// Exact search-tree statistics without walking the tree.
//
// The feasible nodes at level i are the independent sets of G_i, and a node
// at level i holding s vertices has potential s + n - i. Knowing, for every
// prefix G_i, how many independent sets of each size it has (its
// independence polynomial) therefore yields the exhaustive tree size, the
// census count for any threshold, and the independence number.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bbmis/graph.hpp"

namespace bbmis {

inline constexpr std::size_t kProfileMaxOrder = 62;

class SearchTreeProfile {
 public:
  /// by_level[i][s] = number of independent sets of size s in G_i.
  explicit SearchTreeProfile(std::vector<std::vector<std::uint64_t>> by_level);

  std::size_t order() const { return by_level_.size() - 1; }
  std::uint64_t independent_sets_of_size(std::size_t level, std::size_t size) const;

  /// Independence number of the full graph.
  std::size_t alpha() const;
  /// #IS(G_level), empty set included.
  std::uint64_t independent_set_count(std::size_t level) const;
  /// sum_i #IS(G_i): the exhaustive search-tree size.
  std::uint64_t exhaustive_nodes() const;
  /// Feasible nodes with potential >= threshold.
  std::uint64_t census(std::size_t threshold) const;
  /// Feasible nodes with potential exactly u.
  std::uint64_t nodes_with_potential(std::size_t u) const;

 private:
  std::vector<std::vector<std::uint64_t>> by_level_;
};

/// Independence polynomials of all prefixes, by max-degree branching with
/// connected-component splitting. Requires n <= 62 so all counts fit 64 bits.
SearchTreeProfile profile_search_tree(const Graph& g);

}  // namespace bbmis
