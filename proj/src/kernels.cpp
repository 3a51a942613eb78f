#include "mealy/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mealy/components.hpp"
#include "mealy/error.hpp"

namespace mealy::kernels {

std::uint64_t count_words(std::size_t num_states, unsigned n,
                          std::uint64_t limit) {
  std::uint64_t count = 1;
  for (unsigned k = 0; k < n; ++k) {
    if (num_states != 0 && count > limit / num_states) {
      return 0;
    }
    count *= num_states;
  }
  return count <= limit ? count : 0;
}

Word decode_word(std::uint64_t code, std::size_t num_states,
                 unsigned length) {
  Word u(length);
  for (unsigned k = length; k-- > 0;) {
    u[k] = static_cast<StateId>(code % num_states);
    code /= num_states;
  }
  return u;
}

std::uint64_t encode_word(std::span<const StateId> u,
                          std::size_t              num_states) {
  std::uint64_t code = 0;
  for (auto x : u) {
    code = code * num_states + x;
  }
  return code;
}

namespace {
  constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 32;

  std::uint64_t checked_count(const MealyMachine& m, unsigned n) {
    if (n == 0) {
      throw PreconditionViolated("power exponent must be positive");
    }
    auto count = count_words(m.num_states(), n, kTableLimit);
    if (count == 0) {
      throw BudgetExceeded("power table too large");
    }
    return count;
  }

  // Fills the rows of the table for one word; `u` and `scratch` are buffers
  // of length n owned by the caller.
  inline void fill_row(const MealyMachine& m, std::uint64_t w, Word& u,
                       Word& scratch, PowerTable& table, bool with_output) {
    auto const a = m.num_states();
    auto const k = m.num_letters();
    std::uint64_t code = w;
    for (unsigned p = table.length; p-- > 0;) {
      u[p] = static_cast<StateId>(code % a);
      code /= a;
    }
    for (LetterId i = 0; i < k; ++i) {
      scratch.assign(u.begin(), u.end());
      LetterId out            = step_word(m, scratch, i);
      table.next[w * k + i]   = encode_word(scratch, a);
      if (with_output) {
        table.output[w * k + i] = out;
      }
    }
  }

  PowerTable make_table(const MealyMachine& m, unsigned n, bool with_output) {
    PowerTable table;
    table.length      = n;
    table.num_words   = checked_count(m, n);
    table.num_letters = m.num_letters();
    table.next.resize(table.num_words * table.num_letters);
    if (with_output) {
      table.output.resize(table.num_words * table.num_letters);
    }
    return table;
  }

  PowerTable serial_table(const MealyMachine& m, unsigned n,
                          bool with_output) {
    auto table = make_table(m, n, with_output);
    Word u(n), scratch(n);
    for (std::uint64_t w = 0; w < table.num_words; ++w) {
      fill_row(m, w, u, scratch, table, with_output);
    }
    return table;
  }

  PowerTable parallel_table(const MealyMachine& m, unsigned n,
                            bool with_output) {
    auto table = make_table(m, n, with_output);
    auto const count = static_cast<std::int64_t>(table.num_words);
#pragma omp parallel
    {
      Word u(n), scratch(n);
#pragma omp for schedule(static)
      for (std::int64_t w = 0; w < count; ++w) {
        fill_row(m, static_cast<std::uint64_t>(w), u, scratch, table,
                 with_output);
      }
    }
    return table;
  }

  std::vector<std::uint64_t> label_components(const PowerTable& table) {
    auto const count = table.num_words;
    auto const k     = table.num_letters;
    DisjointSets<std::uint64_t> sets(count);
    for (std::uint64_t w = 0; w < count; ++w) {
      for (std::size_t i = 0; i < k; ++i) {
        sets.unite(w, table.next[w * k + i]);
      }
    }
    // Words are visited in increasing order, so the first word seen in each
    // set is its smallest member.
    std::vector<std::uint64_t> smallest(count, ~std::uint64_t{0});
    std::vector<std::uint64_t> labels(count);
    for (std::uint64_t w = 0; w < count; ++w) {
      auto root = sets.find(w);
      if (smallest[root] == ~std::uint64_t{0}) {
        smallest[root] = w;
      }
      labels[w] = smallest[root];
    }
    return labels;
  }
}  // namespace

namespace serial {
  PowerTable power_table(const MealyMachine& m, unsigned n) {
    return serial_table(m, n, true);
  }

  std::vector<std::uint64_t> component_labels(const MealyMachine& m,
                                              unsigned            n) {
    return label_components(serial_table(m, n, false));
  }
}  // namespace serial

namespace parallel {
  PowerTable power_table(const MealyMachine& m, unsigned n) {
    return parallel_table(m, n, true);
  }

  std::vector<std::uint64_t> component_labels(const MealyMachine& m,
                                              unsigned            n) {
    return label_components(parallel_table(m, n, false));
  }
}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace mealy::kernels
