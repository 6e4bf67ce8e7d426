#pragma once

#include <algorithm>
#include <vector>

#include "bbmis/kernels.hpp"

namespace bbmis {

namespace detail {

// Forbidden-vertex masks are kept one slot per include depth: excluding a
// vertex reuses the parent's slot, including one writes the next slot.
template <class OnNode>
class FeasibleTreeWalk {
 public:
  FeasibleTreeWalk(const Graph& g, OnNode& on_node)
      : g_(g), on_node_(on_node), n_(g.order()), words_(g.word_count()),
        forbidden_((g.order() + 1) * std::max<std::size_t>(g.word_count(), 1), 0) {
    chosen_.reserve(n_);
  }

  void run() { visit(0, n_); }

 private:
  void visit(std::size_t level, std::size_t parent_potential) {
    const std::size_t size = chosen_.size();
    const std::size_t pot = size + n_ - level;
    if (!on_node_(NodeView{level, size, pot, parent_potential, chosen_})) return;
    if (level == n_) return;

    const std::uint64_t* mine = forbidden_.data() + size * words_;
    if (!((mine[level >> 6] >> (level & 63)) & 1u)) {
      std::uint64_t* next = forbidden_.data() + (size + 1) * words_;
      std::copy(mine, mine + words_, next);
      kernels::or_into({next, words_}, g_.row(level));
      chosen_.push_back(level);
      visit(level + 1, pot);
      chosen_.pop_back();
    }
    visit(level + 1, pot);
  }

  const Graph& g_;
  OnNode& on_node_;
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> forbidden_;
  std::vector<std::size_t> chosen_;
};

}  // namespace detail

template <class OnNode>
void walk_feasible_tree(const Graph& g, OnNode&& on_node) {
  detail::FeasibleTreeWalk<std::remove_reference_t<OnNode>> walk(g, on_node);
  walk.run();
}

}  // namespace bbmis
