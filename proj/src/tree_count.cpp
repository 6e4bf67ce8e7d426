#include "bbmis/tree_count.hpp"

#include <array>
#include <bit>
#include <string>

#include "bbmis/error.hpp"

namespace bbmis {

namespace {

struct Poly {
  std::array<std::uint64_t, kProfileMaxOrder + 1> c{};
  std::size_t deg = 0;
};

Poly one() {
  Poly p;
  p.c[0] = 1;
  return p;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly r;
  r.deg = a.deg + b.deg;
  for (std::size_t i = 0; i <= a.deg; ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j <= b.deg; ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

class PolyCounter {
 public:
  explicit PolyCounter(const Graph& g) : adj_(g.order(), 0) {
    for (std::size_t v = 0; v < g.order(); ++v) adj_[v] = g.order() == 0 ? 0 : g.row(v)[0];
  }

  Poly count(std::uint64_t alive) const {
    if (!alive) return one();
    const std::uint64_t comp = component_of_lowest(alive);
    if (comp != alive) return multiply(count(comp), count(alive & ~comp));

    std::size_t best = 0;
    int best_deg = -1;
    for (std::uint64_t bits = alive; bits; bits &= bits - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(bits));
      const int d = std::popcount(adj_[v] & alive);
      if (d > best_deg) {
        best_deg = d;
        best = v;
      }
    }
    if (best_deg == 0) {
      Poly p;  // single isolated vertex: 1 + x
      p.c[0] = p.c[1] = 1;
      p.deg = 1;
      return p;
    }

    const std::uint64_t bit = std::uint64_t{1} << best;
    Poly out = count(alive & ~bit);
    const Poly with = count(alive & ~(adj_[best] | bit));
    out.deg = std::max(out.deg, with.deg + 1);
    for (std::size_t s = 0; s <= with.deg; ++s) out.c[s + 1] += with.c[s];
    return out;
  }

 private:
  std::uint64_t component_of_lowest(std::uint64_t alive) const {
    std::uint64_t comp = alive & (~alive + 1);
    std::uint64_t frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t bits = frontier; bits; bits &= bits - 1)
        next |= adj_[static_cast<std::size_t>(std::countr_zero(bits))];
      next &= alive & ~comp;
      comp |= next;
      frontier = next;
    }
    return comp;
  }

  std::vector<std::uint64_t> adj_;
};

}  // namespace

SearchTreeProfile::SearchTreeProfile(std::vector<std::vector<std::uint64_t>> by_level)
    : by_level_(std::move(by_level)) {
  if (by_level_.empty()) throw DomainError("SearchTreeProfile: needs at least level 0");
}

std::uint64_t SearchTreeProfile::independent_sets_of_size(std::size_t level, std::size_t size) const {
  const auto& row = by_level_.at(level);
  return size < row.size() ? row[size] : 0;
}

std::size_t SearchTreeProfile::alpha() const {
  const auto& last = by_level_.back();
  std::size_t a = 0;
  for (std::size_t s = 0; s < last.size(); ++s)
    if (last[s]) a = s;
  return a;
}

std::uint64_t SearchTreeProfile::independent_set_count(std::size_t level) const {
  std::uint64_t total = 0;
  for (std::uint64_t c : by_level_.at(level)) total += c;
  return total;
}

std::uint64_t SearchTreeProfile::exhaustive_nodes() const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < by_level_.size(); ++i) total += independent_set_count(i);
  return total;
}

std::uint64_t SearchTreeProfile::census(std::size_t threshold) const {
  const std::size_t n = order();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    // potential s + n - i >= threshold
    const std::size_t min_size = threshold > n - i ? threshold - (n - i) : 0;
    const auto& row = by_level_[i];
    for (std::size_t s = min_size; s < row.size(); ++s) total += row[s];
  }
  return total;
}

std::uint64_t SearchTreeProfile::nodes_with_potential(std::size_t u) const {
  const std::size_t n = order();
  if (u > n) return 0;
  std::uint64_t total = 0;
  for (std::size_t i = n - u; i <= n; ++i) total += independent_sets_of_size(i, u - (n - i));
  return total;
}

SearchTreeProfile profile_search_tree(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kProfileMaxOrder)
    throw ResourceCapError("profile_search_tree: order " + std::to_string(n) + " exceeds guard", kProfileMaxOrder);
  const PolyCounter counter(g);
  std::vector<std::vector<std::uint64_t>> by_level(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const std::uint64_t prefix = i == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << i) - 1;
    const Poly p = counter.count(prefix);
    by_level[i].assign(p.c.begin(), p.c.begin() + static_cast<std::ptrdiff_t>(p.deg + 1));
  }
  return SearchTreeProfile(std::move(by_level));
}

}  // namespace bbmis
