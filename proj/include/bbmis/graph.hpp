#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bbmis {

/// Fixed-capacity set of vertices 0..capacity-1 stored as 64-bit words.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t word_count() const { return words_.size(); }

  bool test(std::size_t v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  void set(std::size_t v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(std::size_t v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  std::size_t size() const;
  bool empty() const;
  std::vector<std::size_t> members() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Undirected simple graph on vertices 0..n-1 with dense adjacency bitrows.
/// Built once from an edge list; immutable afterwards.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  explicit Graph(std::size_t n);

  /// Throws DomainError on self-loops, out-of-range endpoints or duplicates.
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const { return n_; }
  std::size_t edge_count() const { return m_; }
  std::size_t word_count() const { return words_; }

  bool has_edge(std::size_t u, std::size_t v) const {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  std::span<const std::uint64_t> row(std::size_t v) const {
    return {rows_.data() + v * words_, words_};
  }
  std::size_t degree(std::size_t v) const;
  double average_degree() const;

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  bool is_independent(const VertexSet& s) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  bool insert_edge(std::size_t u, std::size_t v);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// splitmix64 stream; the output sequence is fixed by the seed alone.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state_;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

  /// Uniform integer in [0, bound), bound > 0, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Acceptance threshold floor(p * 2^64); p == 1 is handled by the caller.
std::uint64_t edge_threshold(double p);

/// C(n, 2) as an unsigned count.
std::uint64_t pair_count(std::size_t n);

/// G(n, p): pairs (u, v), u < v, in lexicographic order, each accepted iff
/// the next stream output is below edge_threshold(p); p == 1 always accepts.
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

/// G(n, m): uniform over m-subsets of the C(n, 2) pair slots.
Graph gen_gnm(std::size_t n, std::uint64_t m, std::uint64_t seed);

/// n / (dbar + 1) with dbar = 2m / n.
double turan_bound(const Graph& g);

/// Subgraph induced by vertices 0..i-1.
Graph induced_prefix(const Graph& g, std::size_t i);

/// DIMACS-like text: "p edge <n> <m>" then m lines "e <u> <v>", 1-based.
/// Lines starting with 'c' and blank lines are ignored on input.
Graph read_dimacs(std::string_view text);
std::string write_dimacs(const Graph& g);

Graph read_dimacs_file(const std::string& path);
void write_dimacs_file(const Graph& g, const std::string& path);

}  // namespace bbmis
