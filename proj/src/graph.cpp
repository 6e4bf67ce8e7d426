#include "bbmis/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "bbmis/error.hpp"
#include "bbmis/kernels.hpp"

namespace bbmis {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

}  // namespace

VertexSet::VertexSet(std::size_t capacity) : capacity_(capacity), words_(words_for(capacity), 0) {}

std::size_t VertexSet::size() const { return kernels::popcount(words_); }

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

Graph::Graph(std::size_t n) : n_(n), words_(words_for(n)), rows_(n * words_for(n), 0) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw DomainError("Graph: edge endpoint out of range");
    if (u == v) throw DomainError("Graph: self-loop on vertex " + std::to_string(u));
    if (!insert_edge(u, v))
      throw DomainError("Graph: duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  }
}

bool Graph::insert_edge(std::size_t u, std::size_t v) {
  if (has_edge(u, v)) return false;
  rows_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  rows_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  ++m_;
  return true;
}

std::size_t Graph::degree(std::size_t v) const { return kernels::popcount(row(v)); }

double Graph::average_degree() const {
  return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(m_) / static_cast<double>(n_);
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

bool Graph::is_independent(const VertexSet& s) const {
  if (s.capacity() != n_) throw DomainError("is_independent: set capacity differs from graph order");
  for (std::size_t v : s.members())
    if (kernels::intersects(row(v), s.words())) return false;
  return true;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("RngStream::below: bound must be positive");
  // Reject the low (2^64 mod bound) outputs so every residue is equally likely.
  const std::uint64_t reject = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= reject) return r % bound;
  }
}

std::uint64_t edge_threshold(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability outside [0, 1]");
  if (p >= 1.0) return ~std::uint64_t{0};
  // p * 2^64 is an exact scaling; floor is then exact as well.
  return static_cast<std::uint64_t>(std::floor(std::ldexp(p, 64)));
}

std::uint64_t pair_count(std::size_t n) {
  return n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  const std::uint64_t threshold = edge_threshold(p);
  const bool always = p >= 1.0;
  RngStream rng(seed);
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::uint64_t draw = rng.next();
      if (always || draw < threshold) edges.emplace_back(u, v);
    }
  return Graph(n, edges);
}

Graph gen_gnm(std::size_t n, std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t slots = pair_count(n);
  if (m > slots) throw DomainError("gen_gnm: m exceeds C(n, 2)");

  // Draw the smaller of the edge set and its complement by rejection.
  const bool complement = m > slots / 2;
  const std::uint64_t draws = complement ? slots - m : m;
  std::vector<std::uint8_t> marked(slots, 0);
  RngStream rng(seed);
  for (std::uint64_t taken = 0; taken < draws;) {
    const std::uint64_t slot = rng.below(slots);
    if (!marked[slot]) {
      marked[slot] = 1;
      ++taken;
    }
  }

  std::vector<Graph::Edge> edges;
  edges.reserve(m);
  std::uint64_t slot = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++slot)
      if (static_cast<bool>(marked[slot]) != complement) edges.emplace_back(u, v);
  return Graph(n, edges);
}

double turan_bound(const Graph& g) {
  if (g.order() == 0) throw DomainError("turan_bound: empty vertex set");
  return static_cast<double>(g.order()) / (g.average_degree() + 1.0);
}

Graph induced_prefix(const Graph& g, std::size_t i) {
  if (i > g.order()) throw DomainError("induced_prefix: i exceeds graph order");
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 0; u < i; ++u)
    for (std::size_t v = u + 1; v < i; ++v)
      if (g.has_edge(u, v)) edges.emplace_back(u, v);
  return Graph(i, edges);
}

}  // namespace bbmis
