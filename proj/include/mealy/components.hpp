#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "mealy/automaton.hpp"

namespace mealy {

// Union-find with path halving and union by size.
template <typename Index>
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x          = parent_[x];
    }
    return x;
  }

  bool unite(Index a, Index b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    if (size_[a] < size_[b]) {
      std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  std::size_t size(Index x) noexcept { return size_[find(x)]; }

 private:
  std::vector<Index>       parent_;
  std::vector<std::size_t> size_;
};

// Blocks are listed by their smallest state; states inside a block ascend.
struct ComponentPartition {
  std::vector<std::vector<StateId>> blocks;
  std::vector<std::size_t>          block_of;  // indexed by state

  std::size_t num_blocks() const noexcept { return blocks.size(); }
  std::vector<std::size_t> sizes() const;
};

// Weakly connected components of the underlying digraph. For reversible
// automata these are also the strongly connected components.
ComponentPartition connected_components(const Automaton& a);

}  // namespace mealy
