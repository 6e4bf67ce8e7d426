#include "bbmis/solvers.hpp"

#include <bit>
#include <queue>
#include <string>

#include "bbmis/error.hpp"
#include "bbmis/kernels.hpp"

namespace bbmis {

namespace {

using Clock = std::chrono::steady_clock;

VertexSet to_set(std::size_t n, std::span<const std::size_t> members) {
  VertexSet s(n);
  for (std::size_t v : members) s.set(v);
  return s;
}

std::uint64_t count_rec(const Graph& g, VertexSet& alive) {
  std::size_t best = 0;
  std::size_t best_deg = 0;
  bool any = false;
  for (std::size_t v : alive.members()) {
    const std::size_t d = kernels::and_popcount(g.row(v), alive.words());
    if (!any || d > best_deg) {
      best = v;
      best_deg = d;
      any = true;
    }
  }
  if (!any) return 1;
  if (best_deg == 0) return std::uint64_t{1} << alive.size();

  VertexSet without = alive;
  without.reset(best);
  VertexSet closed = without;
  kernels::andnot_into(closed.words(), g.row(best));
  return count_rec(g, without) + count_rec(g, closed);
}

}  // namespace

std::size_t potential(std::size_t size, std::size_t level, std::size_t n) {
  if (size > level || level > n) throw DomainError("potential: requires size <= level <= n");
  return size + n - level;
}

SolveResult brute_force_alpha(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kBruteForceMaxOrder)
    throw ResourceCapError("brute_force_alpha: order " + std::to_string(n) + " exceeds guard", kBruteForceMaxOrder);
  const auto start = Clock::now();

  // Adjacency of each vertex restricted to lower indices, as a plain mask.
  std::vector<std::uint32_t> lower(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < v; ++u)
      if (g.has_edge(u, v)) lower[v] |= std::uint32_t{1} << u;

  // independent[mask] built incrementally from mask without its top bit.
  const std::uint32_t total = std::uint32_t{1} << n;
  std::vector<std::uint8_t> independent(total, 0);
  independent[0] = 1;
  std::uint32_t best_mask = 0;
  std::size_t best_size = 0;
  std::uint64_t leaves = 1;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int top = 31 - std::countl_zero(mask);
    const std::uint32_t rest = mask & ~(std::uint32_t{1} << top);
    if (independent[rest] && !(lower[static_cast<std::size_t>(top)] & rest)) {
      independent[mask] = 1;
      ++leaves;
      const auto sz = static_cast<std::size_t>(std::popcount(mask));
      if (sz > best_size) {
        best_size = sz;
        best_mask = mask;
      }
    }
  }

  SolveResult r;
  r.alpha = best_size;
  r.witness = VertexSet(n);
  for (std::size_t v = 0; v < n; ++v)
    if (best_mask >> v & 1u) r.witness.set(v);
  r.nodes_expanded = total;
  r.leaves_seen = leaves;
  r.elapsed = Clock::now() - start;
  return r;
}

std::uint64_t count_independent_sets(const Graph& g) {
  if (g.order() > kCountMaxOrder)
    throw ResourceCapError("count_independent_sets: order " + std::to_string(g.order()) + " exceeds guard",
                           kCountMaxOrder);
  VertexSet alive(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) alive.set(v);
  return count_rec(g, alive);
}

SolveResult exhaustive_search(const Graph& g, std::uint64_t node_cap) {
  const auto start = Clock::now();
  const std::size_t n = g.order();
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::size_t best = 0;
  std::vector<std::size_t> best_set;
  bool have_best = false;

  walk_feasible_tree(g, [&](const NodeView& node) {
    if (++nodes > node_cap)
      throw ResourceCapError("exhaustive_search: node cap " + std::to_string(node_cap) + " exceeded", node_cap);
    if (node.level == n) {
      ++leaves;
      if (!have_best || node.size > best) {
        best = node.size;
        best_set.assign(node.chosen.begin(), node.chosen.end());
        have_best = true;
      }
    }
    return true;
  });

  SolveResult r;
  r.alpha = best;
  r.witness = to_set(n, best_set);
  r.nodes_expanded = nodes;
  r.leaves_seen = leaves;
  r.elapsed = Clock::now() - start;
  return r;
}

std::uint64_t bnb_census(const Graph& g, std::size_t alpha, std::uint64_t node_cap) {
  if (alpha > g.order()) throw DomainError("bnb_census: alpha exceeds graph order");
  std::uint64_t nodes = 0;
  walk_feasible_tree(g, [&](const NodeView& node) {
    if (node.potential < alpha) return false;
    if (++nodes > node_cap)
      throw ResourceCapError("bnb_census: node cap " + std::to_string(node_cap) + " exceeded", node_cap);
    return true;
  });
  return nodes;
}

namespace {

struct FrontierEntry {
  std::size_t potential;
  std::size_t level;
  bool via_include;
  std::uint64_t seq;
  std::size_t slot;
};

// priority_queue keeps the "largest" entry on top.
struct FrontierOrder {
  bool operator()(const FrontierEntry& a, const FrontierEntry& b) const {
    if (a.potential != b.potential) return a.potential < b.potential;
    if (a.level != b.level) return a.level < b.level;
    if (a.via_include != b.via_include) return !a.via_include;
    return a.seq < b.seq;
  }
};

// Chosen-set masks. Each include branch takes a fresh slot; an exclude
// child inherits its parent's slot, so slots are never released.
class MaskArena {
 public:
  explicit MaskArena(std::size_t words) : words_(std::max<std::size_t>(words, 1)) {}

  std::size_t acquire() {
    data_.resize(data_.size() + words_);
    return data_.size() / words_ - 1;
  }
  std::span<std::uint64_t> at(std::size_t slot) { return {data_.data() + slot * words_, words_}; }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

}  // namespace

SolveResult bnb_best_first(const Graph& g, std::uint64_t frontier_cap) {
  const auto start = Clock::now();
  const std::size_t n = g.order();
  const std::size_t words = g.word_count();

  MaskArena arena(words);
  std::priority_queue<FrontierEntry, std::vector<FrontierEntry>, FrontierOrder> frontier;
  std::uint64_t seq = 0;
  std::uint64_t popped = 0;
  std::uint64_t leaves = 0;

  frontier.push({n, 0, false, seq++, arena.acquire()});
  if (n == 0) leaves = 1;

  SolveResult r;
  while (!frontier.empty()) {
    const FrontierEntry top = frontier.top();
    frontier.pop();
    ++popped;

    if (top.level == n) {
      r.alpha = top.potential;
      r.witness = VertexSet(n);
      if (words > 0) std::copy_n(arena.at(top.slot).begin(), words, r.witness.words().begin());
      break;
    }

    const std::size_t v = top.level;
    const auto chosen = arena.at(top.slot).first(words);
    const bool can_include = !kernels::intersects(g.row(v), chosen);
    const bool child_is_leaf = v + 1 == n;

    if (can_include) {
      const std::size_t slot = arena.acquire();
      auto dst = arena.at(slot);
      auto src = arena.at(top.slot);
      std::copy(src.begin(), src.end(), dst.begin());
      dst[v >> 6] |= std::uint64_t{1} << (v & 63);
      frontier.push({top.potential, v + 1, true, seq++, slot});
      if (child_is_leaf) ++leaves;
    }
    // The exclude child reuses the parent's mask; its potential is
    // size + n - (v + 1) >= size, so it never underflows.
    frontier.push({top.potential - 1, v + 1, false, seq++, top.slot});
    if (child_is_leaf) ++leaves;

    if (frontier.size() > frontier_cap)
      throw ResourceCapError("bnb_best_first: frontier cap " + std::to_string(frontier_cap) + " exceeded",
                             frontier_cap);
  }

  r.nodes_expanded = popped;
  r.leaves_seen = leaves;
  r.elapsed = Clock::now() - start;
  return r;
}

}  // namespace bbmis
