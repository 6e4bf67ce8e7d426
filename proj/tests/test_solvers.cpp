#include <doctest.h>

#include <vector>

#include "bbmis/error.hpp"
#include "bbmis/graph.hpp"
#include "bbmis/solvers.hpp"
#include "bbmis/tree_count.hpp"

using namespace bbmis;

namespace {

Graph from_edges(std::size_t n, std::vector<Graph::Edge> e) { return Graph(n, e); }
Graph triangle() { return from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph path3() { return from_edges(3, {{0, 1}, {1, 2}}); }
Graph c5() { return from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}); }

void check_witness(const Graph& g, const SolveResult& r) {
  CHECK(r.witness.capacity() == g.order());
  CHECK(g.is_independent(r.witness));
  CHECK(r.witness.size() == r.alpha);
  CHECK(r.nodes_expanded >= 1);
}

std::uint64_t prefix_count_sum(const Graph& g) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i <= g.order(); ++i) s += count_independent_sets(induced_prefix(g, i));
  return s;
}

}  // namespace

TEST_SUITE("solvers") {
  TEST_CASE("potential") {
    CHECK(potential(0, 0, 9) == 9);
    CHECK(potential(4, 9, 9) == 4);
    CHECK(potential(2, 5, 10) == 7);
    CHECK_THROWS_AS(potential(3, 2, 10), DomainError);
    CHECK_THROWS_AS(potential(0, 11, 10), DomainError);
  }

  TEST_CASE("brute_force_alpha examples") {
    CHECK(brute_force_alpha(triangle()).alpha == 1);
    CHECK(brute_force_alpha(Graph(5)).alpha == 5);
    CHECK(brute_force_alpha(c5()).alpha == 2);
    CHECK(brute_force_alpha(Graph(0)).alpha == 0);
    check_witness(c5(), brute_force_alpha(c5()));
    CHECK_THROWS_AS(brute_force_alpha(Graph(26)), ResourceCapError);
  }

  TEST_CASE("count_independent_sets examples") {
    CHECK(count_independent_sets(Graph(3)) == 8);
    CHECK(count_independent_sets(triangle()) == 4);
    CHECK(count_independent_sets(path3()) == 5);
    CHECK(count_independent_sets(Graph(0)) == 1);
    CHECK(count_independent_sets(c5()) == 11);
    CHECK(count_independent_sets(Graph(50)) == (std::uint64_t{1} << 50));
    CHECK_THROWS_AS(count_independent_sets(Graph(51)), ResourceCapError);
  }

  TEST_CASE("exhaustive_search examples") {
    auto r = exhaustive_search(Graph(3));
    CHECK(r.nodes_expanded == 15);
    CHECK(r.alpha == 3);
    CHECK(r.leaves_seen == 8);
    r = exhaustive_search(triangle());
    CHECK(r.nodes_expanded == 10);
    CHECK(r.alpha == 1);
    r = exhaustive_search(path3());
    CHECK(r.nodes_expanded == 11);
    CHECK(r.alpha == 2);
    check_witness(path3(), r);
    r = exhaustive_search(Graph(0));
    CHECK(r.nodes_expanded == 1);
    CHECK(r.alpha == 0);
    CHECK_THROWS_AS(exhaustive_search(Graph(20), 1000), ResourceCapError);
  }

  TEST_CASE("bnb_best_first examples") {
    auto r = bnb_best_first(Graph(5));
    CHECK(r.alpha == 5);
    // The all-include chain is popped first: root plus five levels.
    CHECK(r.nodes_expanded == 6);
    CHECK(bnb_best_first(triangle()).alpha == 1);
    r = bnb_best_first(path3());
    CHECK(r.alpha == 2);
    CHECK(r.witness.members() == std::vector<std::size_t>{0, 2});
    check_witness(path3(), r);
    CHECK(bnb_best_first(Graph(0)).alpha == 0);
    CHECK_THROWS_AS(bnb_best_first(gen_gnp(60, 0.05, 1), 3), ResourceCapError);
  }

  TEST_CASE("bnb_census examples") {
    CHECK(bnb_census(Graph(3), 3) == 4);
    CHECK(bnb_census(path3(), 2) == 6);
    // Every feasible node except the empty leaf (potential 0) reaches 1.
    CHECK(bnb_census(triangle(), 1) == 9);
    CHECK(bnb_census(triangle(), 0) == 10);
    CHECK_THROWS_AS(bnb_census(path3(), 4), DomainError);
    CHECK_THROWS_AS(bnb_census(Graph(20), 1, 100), ResourceCapError);
  }

  TEST_CASE("oracle equivalence on random graphs") {
    int graphs = 0;
    for (std::size_t n = 4; n <= 18; ++n) {
      for (int pi = 1; pi <= 9; ++pi) {
        for (std::uint64_t s = 0; s < 2; ++s) {
          const Graph g = gen_gnp(n, 0.1 * pi, n * 1000 + static_cast<std::uint64_t>(pi) * 10 + s);
          const auto bf = brute_force_alpha(g);
          const auto ex = exhaustive_search(g);
          const auto bb = bnb_best_first(g);
          CHECK(ex.alpha == bf.alpha);
          CHECK(bb.alpha == bf.alpha);
          check_witness(g, bf);
          check_witness(g, ex);
          check_witness(g, bb);
          ++graphs;
        }
      }
    }
    CHECK(graphs >= 200);
  }

  TEST_CASE("node-count identity, dominance and per-instance lower bound") {
    for (std::uint64_t s = 0; s < 60; ++s) {
      const std::size_t n = 5 + s % 18;
      const Graph g = gen_gnp(n, 0.05 + 0.015 * static_cast<double>(s), s);
      const auto ex = exhaustive_search(g);
      CHECK(ex.nodes_expanded == prefix_count_sum(g));
      CHECK(ex.nodes_expanded >= count_independent_sets(g));
      CHECK(ex.leaves_seen == count_independent_sets(g));
      const auto census = bnb_census(g, ex.alpha);
      CHECK(census <= ex.nodes_expanded);
      CHECK(census >= n + 1);  // the path to an optimal leaf
    }
  }

  TEST_CASE("potentials never increase along a root path") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const Graph g = gen_gnp(14, 0.3, s);
      std::uint64_t seen = 0;
      bool ok = true;
      walk_feasible_tree(g, [&](const NodeView& node) {
        ++seen;
        ok = ok && node.potential <= node.parent_potential;
        ok = ok && node.potential == potential(node.size, node.level, g.order());
        ok = ok && node.chosen.size() == node.size;
        for (std::size_t v : node.chosen) ok = ok && v < node.level;
        return true;
      });
      CHECK(ok);
      CHECK(seen == exhaustive_search(g).nodes_expanded);
    }
  }

  TEST_CASE("determinism") {
    const Graph g = gen_gnp(24, 0.2, 4);
    const auto a = bnb_best_first(g);
    const auto b = bnb_best_first(g);
    CHECK(a.alpha == b.alpha);
    CHECK(a.witness == b.witness);
    CHECK(a.nodes_expanded == b.nodes_expanded);
    CHECK(a.leaves_seen == b.leaves_seen);
    const auto c = exhaustive_search(g);
    const auto d = exhaustive_search(g);
    CHECK(c.witness == d.witness);
    CHECK(c.nodes_expanded == d.nodes_expanded);
  }

  TEST_CASE("multi-word graphs") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Graph g = gen_gnp(70, 0.5, s);
      const auto bb = bnb_best_first(g);
      check_witness(g, bb);
      const auto census = bnb_census(g, bb.alpha);
      CHECK(census >= 71);
    }
  }
}

TEST_SUITE("tree_count") {
  TEST_CASE("profile of small graphs") {
    const auto p = profile_search_tree(path3());
    CHECK(p.order() == 3);
    CHECK(p.alpha() == 2);
    CHECK(p.exhaustive_nodes() == 11);
    CHECK(p.census(2) == 6);
    CHECK(p.independent_set_count(3) == 5);
    CHECK(p.independent_sets_of_size(3, 2) == 1);
    CHECK(p.nodes_with_potential(3) == 2);
    const auto e = profile_search_tree(Graph(0));
    CHECK(e.exhaustive_nodes() == 1);
    CHECK(e.alpha() == 0);
    CHECK(profile_search_tree(Graph(62)).independent_set_count(62) == (std::uint64_t{1} << 62));
    CHECK_THROWS_AS(profile_search_tree(Graph(63)), ResourceCapError);
  }

  TEST_CASE("profile agrees with traversal") {
    for (std::uint64_t s = 0; s < 80; ++s) {
      const std::size_t n = 1 + s % 24;
      const Graph g = gen_gnp(n, 0.02 + 0.012 * static_cast<double>(s), 500 + s);
      const auto prof = profile_search_tree(g);
      const auto ex = exhaustive_search(g);
      CHECK(prof.exhaustive_nodes() == ex.nodes_expanded);
      CHECK(prof.alpha() == ex.alpha);
      CHECK(prof.independent_set_count(n) == count_independent_sets(g));
      std::vector<std::uint64_t> by_u(n + 1, 0);
      walk_feasible_tree(g, [&](const NodeView& node) {
        ++by_u[node.potential];
        return true;
      });
      for (std::size_t u = 0; u <= n; ++u) {
        CHECK(prof.nodes_with_potential(u) == by_u[u]);
        CHECK(prof.census(u) == bnb_census(g, u));
      }
    }
  }

  TEST_CASE("profile on graphs too large to traverse") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Graph g = gen_gnp(36, 1.0 / 36, s);
      const auto prof = profile_search_tree(g);
      CHECK(prof.independent_set_count(36) == count_independent_sets(g));
      CHECK(prof.alpha() == bnb_best_first(g).alpha);
      CHECK(prof.census(prof.alpha()) == bnb_census(g, prof.alpha()));
    }
  }
}
