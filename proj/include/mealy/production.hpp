#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "mealy/automaton.hpp"

namespace mealy {

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// Decides rho_u == rho_v as maps on all letter words by exploring the pairs
// (delta_s(u), delta_s(v)) and comparing single-letter outputs. The pair space
// is finite because delta keeps word lengths fixed. Pairs proven equal are
// remembered for the lifetime of the comparator.
class ProductionComparator {
 public:
  explicit ProductionComparator(const MealyMachine& m) : machine_(&m) {}

  bool equal(std::span<const StateId> u, std::span<const StateId> v);

  std::size_t cached_pairs() const noexcept { return proven_.size(); }

 private:
  const MealyMachine*                    machine_;
  std::unordered_set<Word, WordHash>     proven_;
};

bool equal_production(const MealyMachine&      m,
                      std::span<const StateId> u,
                      std::span<const StateId> v);

// Canonical code of the minimal initial transducer computing rho_u. Two state
// words get the same code exactly when their production functions coincide.
// Layout: number of states, then for each state in breadth-first order from
// the root its outputs on every letter followed by its successor indices.
using ElementCode = std::vector<std::uint32_t>;

struct ElementCodeHash {
  std::size_t operator()(const ElementCode& c) const noexcept;
};

// Code of rho_x for a single state x.
ElementCode generator_code(const MealyMachine& m, StateId x);

// Code of rho_x composed after the element `code`, i.e. of rho_{u x} when
// `code` describes rho_u.
ElementCode compose_code(const MealyMachine& m, const ElementCode& code,
                         StateId x);

// Applies the element described by `code` to a letter word.
Word apply_code(const ElementCode& code, std::size_t num_letters,
                std::span<const LetterId> s);

}  // namespace mealy
