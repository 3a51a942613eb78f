#include "mealy/components.hpp"

namespace mealy {

std::vector<std::size_t> ComponentPartition::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(blocks.size());
  for (auto const& b : blocks) {
    out.push_back(b.size());
  }
  return out;
}

ComponentPartition connected_components(const Automaton& a) {
  auto const n = a.num_states();
  DisjointSets<StateId> sets(n);
  for (LetterId i = 0; i < a.num_letters(); ++i) {
    for (StateId x = 0; x < n; ++x) {
      sets.unite(x, a.next(x, i));
    }
  }
  ComponentPartition p;
  p.block_of.assign(n, 0);
  std::vector<std::size_t> block_of_root(n, static_cast<std::size_t>(-1));
  for (StateId x = 0; x < n; ++x) {
    auto root = sets.find(x);
    if (block_of_root[root] == static_cast<std::size_t>(-1)) {
      block_of_root[root] = p.blocks.size();
      p.blocks.emplace_back();
    }
    p.block_of[x] = block_of_root[root];
    p.blocks[p.block_of[x]].push_back(x);
  }
  return p;
}

}  // namespace mealy
