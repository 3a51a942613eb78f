#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mealy {

using StateId  = std::uint32_t;
using LetterId = std::uint32_t;

// Marks a transition or output that has not been assigned yet.
inline constexpr std::uint32_t kUndefined
    = std::numeric_limits<std::uint32_t>::max();

// A finite word over either the stateset or the alphabet of a machine; which
// one is fixed by the operation receiving it.
using Word = std::vector<std::uint32_t>;

// Complete deterministic automaton without initial or final states. Ids are
// dense indices in declaration order; names are kept for printing.
class Automaton {
 public:
  Automaton() = default;
  Automaton(std::vector<std::string> states, std::vector<std::string> letters);

  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_letters() const noexcept { return letters_.size(); }

  StateId next(StateId x, LetterId i) const noexcept {
    return delta_[static_cast<std::size_t>(i) * states_.size() + x];
  }
  void set_next(StateId x, LetterId i, StateId y);

  // The transition function of one letter, indexed by state.
  std::span<const StateId> transition(LetterId i) const noexcept {
    return {delta_.data() + static_cast<std::size_t>(i) * states_.size(),
            states_.size()};
  }

  const std::vector<std::string>& state_names() const noexcept {
    return states_;
  }
  const std::vector<std::string>& letter_names() const noexcept {
    return letters_;
  }
  const std::string& state_name(StateId x) const { return states_.at(x); }
  const std::string& letter_name(LetterId i) const { return letters_.at(i); }

  std::optional<StateId>  find_state(std::string_view name) const;
  std::optional<LetterId> find_letter(std::string_view name) const;

  bool operator==(const Automaton& other) const {
    return states_ == other.states_ && letters_ == other.letters_
           && delta_ == other.delta_;
  }

 private:
  std::vector<std::string> states_;
  std::vector<std::string> letters_;
  std::vector<StateId>     delta_;  // letter-major
  std::unordered_map<std::string, StateId>  state_index_;
  std::unordered_map<std::string, LetterId> letter_index_;
};

// An automaton together with one output function per state: a letter-to-letter
// transducer whose input and output alphabets coincide.
class MealyMachine {
 public:
  MealyMachine() = default;
  explicit MealyMachine(Automaton automaton);

  const Automaton& automaton() const noexcept { return automaton_; }

  std::size_t num_states() const noexcept { return automaton_.num_states(); }
  std::size_t num_letters() const noexcept {
    return automaton_.num_letters();
  }

  StateId next(StateId x, LetterId i) const noexcept {
    return automaton_.next(x, i);
  }
  LetterId output(StateId x, LetterId i) const noexcept {
    return rho_[static_cast<std::size_t>(x) * num_letters() + i];
  }
  // The output function of one state, indexed by letter.
  std::span<const LetterId> output_function(StateId x) const noexcept {
    return {rho_.data() + static_cast<std::size_t>(x) * num_letters(),
            num_letters()};
  }

  void set_next(StateId x, LetterId i, StateId y) {
    automaton_.set_next(x, i, y);
  }
  void set_output(StateId x, LetterId i, LetterId j);
  void set_transition(StateId x, LetterId i, StateId y, LetterId j) {
    set_next(x, i, y);
    set_output(x, i, j);
  }

  bool operator==(const MealyMachine& other) const {
    return automaton_ == other.automaton_ && rho_ == other.rho_;
  }

 private:
  Automaton             automaton_;
  std::vector<LetterId> rho_;  // state-major
};

// A permutation (or any map) of the letters, as an image table.
using LetterMap = std::vector<LetterId>;

MealyMachine enrich_with(const Automaton& a, std::span<const LetterMap> rho);

////////////////////////////////////////////////////////////////////////////
// Validation
////////////////////////////////////////////////////////////////////////////

enum class DiagnosticKind {
  empty_states,
  small_alphabet,
  duplicate_name,
  incomplete,
  out_of_range,
};

struct Diagnostic {
  DiagnosticKind kind;
  std::string    message;
};

std::string_view to_string(DiagnosticKind kind);

std::vector<Diagnostic> validate(const Automaton& a);
std::vector<Diagnostic> validate(const MealyMachine& m);

// True when the diagnostics contain nothing beyond a one-letter alphabet. A
// one-letter alphabet is only an analysis assumption, so constructions such as
// the dual of a one-state machine still produce usable machines.
bool structurally_sound(std::span<const Diagnostic> diagnostics);

////////////////////////////////////////////////////////////////////////////
// Predicates
////////////////////////////////////////////////////////////////////////////

// Every transition function is a permutation of the stateset.
bool is_reversible(const Automaton& a);
inline bool is_reversible(const MealyMachine& m) {
  return is_reversible(m.automaton());
}
// Every output function is a permutation of the alphabet.
bool is_invertible(const MealyMachine& m);
bool is_bireversible(const MealyMachine& m);

////////////////////////////////////////////////////////////////////////////
// Transforms
////////////////////////////////////////////////////////////////////////////

// x^-1 --j|i--> y^-1 for every x --i|j--> y. State x is renamed "x^-1", and a
// name already ending in "^-1" loses the suffix, so inverse is an involution.
MealyMachine inverse(const MealyMachine& m);

// Exchanges the roles of states and letters: x --i|j--> y becomes
// i --x|y--> j.
MealyMachine dual(const MealyMachine& m);

inline constexpr std::size_t kDefaultPowerCap = 1'000'000;

// The n-th power, states are words of length n in lexicographic order of ids.
// Throws BudgetExceeded when |A|^n exceeds `cap`.
MealyMachine power(const MealyMachine& m,
                   unsigned            n,
                   std::size_t         cap = kDefaultPowerCap);

// Image of the letter word `s` under the composed production function of the
// state word `u`; the first state of `u` acts first.
Word apply_rho(const MealyMachine&        m,
               std::span<const StateId>  u,
               std::span<const LetterId> s);

// Dual action: image of the state word `u` under the letters of `s`.
Word apply_delta(const MealyMachine&        m,
                 std::span<const LetterId> s,
                 std::span<const StateId>  u);

// Single step of both actions at once: feeds letter `i` through the state word
// `u` in place and returns the letter that comes out.
inline LetterId step_word(const MealyMachine& m, std::span<StateId> u,
                          LetterId i) noexcept {
  for (auto& x : u) {
    LetterId out = m.output(x, i);
    x            = m.next(x, i);
    i            = out;
  }
  return i;
}

}  // namespace mealy
