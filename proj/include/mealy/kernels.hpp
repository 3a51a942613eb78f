#pragma once

// Data-parallel kernels over the words of a power of a Mealy machine. Each
// kernel has a serial reference in `serial` and an OpenMP version in
// `parallel`; the two must produce identical tables, which the kernel tests
// and the benchmark both rely on.

#include <cstdint>
#include <vector>

#include "mealy/automaton.hpp"

namespace mealy::kernels {

// Transition and output tables of the n-th power. Word u = u_0 ... u_{n-1} is
// encoded as the base-|A| integer with u_0 most significant, so extending u by
// one state z gives u * |A| + z.
struct PowerTable {
  unsigned                   length      = 0;
  std::uint64_t              num_words   = 0;
  std::size_t                num_letters = 0;
  std::vector<std::uint64_t> next;    // [word * num_letters + letter]
  std::vector<LetterId>      output;  // [word * num_letters + letter]

  bool operator==(const PowerTable&) const = default;
};

// |A|^n, or 0 when it overflows `limit`.
std::uint64_t count_words(std::size_t num_states, unsigned n,
                          std::uint64_t limit);

Word          decode_word(std::uint64_t code, std::size_t num_states,
                          unsigned length);
std::uint64_t encode_word(std::span<const StateId> u, std::size_t num_states);

namespace serial {
  PowerTable power_table(const MealyMachine& m, unsigned n);
  // Component label for every word of length n: the union-find root that
  // joins u with each delta_i(u). Labels are the smallest word code of each
  // component, so they are stable across implementations.
  std::vector<std::uint64_t> component_labels(const MealyMachine& m,
                                              unsigned            n);
}  // namespace serial

namespace parallel {
  PowerTable                 power_table(const MealyMachine& m, unsigned n);
  std::vector<std::uint64_t> component_labels(const MealyMachine& m,
                                              unsigned            n);
}  // namespace parallel

// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace mealy::kernels
