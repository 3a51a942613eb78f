#include "mealy/automaton.hpp"

#include <algorithm>
#include <string>

#include "mealy/error.hpp"
#include "mealy/kernels.hpp"

namespace mealy {

InvalidMachine::InvalidMachine(std::vector<std::string> problems)
    : Error([&] {
        std::string msg = "invalid machine";
        for (auto const& p : problems) {
          msg += "; " + p;
        }
        return msg;
      }()),
      problems_(std::move(problems)) {}

////////////////////////////////////////////////////////////////////////////
// Automaton
////////////////////////////////////////////////////////////////////////////

Automaton::Automaton(std::vector<std::string> states,
                     std::vector<std::string> letters)
    : states_(std::move(states)),
      letters_(std::move(letters)),
      delta_(states_.size() * letters_.size(), kUndefined) {
  for (StateId x = 0; x < states_.size(); ++x) {
    state_index_.try_emplace(states_[x], x);
  }
  for (LetterId i = 0; i < letters_.size(); ++i) {
    letter_index_.try_emplace(letters_[i], i);
  }
}

void Automaton::set_next(StateId x, LetterId i, StateId y) {
  if (x >= num_states() || i >= num_letters() || y >= num_states()) {
    throw UnknownSymbol("transition out of range");
  }
  delta_[static_cast<std::size_t>(i) * states_.size() + x] = y;
}

std::optional<StateId> Automaton::find_state(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<LetterId> Automaton::find_letter(std::string_view name) const {
  auto it = letter_index_.find(std::string(name));
  if (it == letter_index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

////////////////////////////////////////////////////////////////////////////
// MealyMachine
////////////////////////////////////////////////////////////////////////////

MealyMachine::MealyMachine(Automaton automaton)
    : automaton_(std::move(automaton)),
      rho_(automaton_.num_states() * automaton_.num_letters(), kUndefined) {}

void MealyMachine::set_output(StateId x, LetterId i, LetterId j) {
  if (x >= num_states() || i >= num_letters() || j >= num_letters()) {
    throw UnknownSymbol("output out of range");
  }
  rho_[static_cast<std::size_t>(x) * num_letters() + i] = j;
}

MealyMachine enrich_with(const Automaton& a, std::span<const LetterMap> rho) {
  if (rho.size() != a.num_states()) {
    throw PreconditionViolated("enrichment needs one output map per state");
  }
  MealyMachine m(a);
  for (StateId x = 0; x < a.num_states(); ++x) {
    if (rho[x].size() != a.num_letters()) {
      throw PreconditionViolated("output map has the wrong size");
    }
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      m.set_output(x, i, rho[x][i]);
    }
  }
  return m;
}

////////////////////////////////////////////////////////////////////////////
// Validation
////////////////////////////////////////////////////////////////////////////

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::empty_states:
      return "empty";
    case DiagnosticKind::small_alphabet:
      return "small-alphabet";
    case DiagnosticKind::duplicate_name:
      return "duplicate-name";
    case DiagnosticKind::incomplete:
      return "incomplete";
    case DiagnosticKind::out_of_range:
      return "out-of-range";
  }
  return "unknown";
}

namespace {
  void check_names(const std::vector<std::string>& names,
                   std::string_view                what,
                   std::vector<Diagnostic>&        out) {
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    auto it = std::adjacent_find(sorted.begin(), sorted.end());
    if (it != sorted.end()) {
      out.push_back({DiagnosticKind::duplicate_name,
                     "duplicate " + std::string(what) + " '" + *it + "'"});
    }
  }
}  // namespace

std::vector<Diagnostic> validate(const Automaton& a) {
  std::vector<Diagnostic> out;
  if (a.num_states() == 0) {
    out.push_back({DiagnosticKind::empty_states, "stateset is empty"});
  }
  if (a.num_letters() < 2) {
    out.push_back({DiagnosticKind::small_alphabet,
                   "alphabet has fewer than two letters"});
  }
  check_names(a.state_names(), "state", out);
  check_names(a.letter_names(), "letter", out);
  for (StateId x = 0; x < a.num_states(); ++x) {
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      StateId y = a.next(x, i);
      if (y == kUndefined) {
        out.push_back({DiagnosticKind::incomplete,
                       "incomplete: no transition from state '"
                           + a.state_name(x) + "' on letter '"
                           + a.letter_name(i) + "'"});
      } else if (y >= a.num_states()) {
        out.push_back({DiagnosticKind::out_of_range,
                       "transition from '" + a.state_name(x)
                           + "' targets an unknown state"});
      }
    }
  }
  return out;
}

std::vector<Diagnostic> validate(const MealyMachine& m) {
  auto out = validate(m.automaton());
  for (StateId x = 0; x < m.num_states(); ++x) {
    for (LetterId i = 0; i < m.num_letters(); ++i) {
      LetterId j = m.output(x, i);
      if (j == kUndefined) {
        out.push_back({DiagnosticKind::incomplete,
                       "incomplete: no output at state '"
                           + m.automaton().state_name(x) + "' on letter '"
                           + m.automaton().letter_name(i) + "'"});
      } else if (j >= m.num_letters()) {
        out.push_back({DiagnosticKind::out_of_range,
                       "output at '" + m.automaton().state_name(x)
                           + "' is an unknown letter"});
      }
    }
  }
  return out;
}

bool structurally_sound(std::span<const Diagnostic> diagnostics) {
  return std::all_of(diagnostics.begin(), diagnostics.end(), [](auto& d) {
    return d.kind == DiagnosticKind::small_alphabet;
  });
}

////////////////////////////////////////////////////////////////////////////
// Predicates
////////////////////////////////////////////////////////////////////////////

namespace {
  bool is_permutation_table(std::span<const std::uint32_t> table) {
    std::vector<bool> seen(table.size(), false);
    for (auto v : table) {
      if (v >= table.size() || seen[v]) {
        return false;
      }
      seen[v] = true;
    }
    return true;
  }
}  // namespace

bool is_reversible(const Automaton& a) {
  for (LetterId i = 0; i < a.num_letters(); ++i) {
    if (!is_permutation_table(a.transition(i))) {
      return false;
    }
  }
  return true;
}

bool is_invertible(const MealyMachine& m) {
  for (StateId x = 0; x < m.num_states(); ++x) {
    if (!is_permutation_table(m.output_function(x))) {
      return false;
    }
  }
  return true;
}

bool is_bireversible(const MealyMachine& m) {
  if (!is_invertible(m) || !is_reversible(m)) {
    return false;
  }
  auto inv = inverse(m);
  return is_invertible(inv) && is_reversible(inv);
}

////////////////////////////////////////////////////////////////////////////
// Transforms
////////////////////////////////////////////////////////////////////////////

namespace {
  constexpr std::string_view kInverseSuffix = "^-1";

  std::string inverse_name(const std::string& name) {
    if (name.size() > kInverseSuffix.size() && name.ends_with(kInverseSuffix)) {
      return name.substr(0, name.size() - kInverseSuffix.size());
    }
    return name + std::string(kInverseSuffix);
  }
}  // namespace

MealyMachine inverse(const MealyMachine& m) {
  if (!is_invertible(m)) {
    throw NotInvertible();
  }
  std::vector<std::string> names;
  names.reserve(m.num_states());
  for (auto const& n : m.automaton().state_names()) {
    names.push_back(inverse_name(n));
  }
  MealyMachine inv(Automaton(std::move(names), m.automaton().letter_names()));
  for (StateId x = 0; x < m.num_states(); ++x) {
    for (LetterId i = 0; i < m.num_letters(); ++i) {
      inv.set_transition(x, m.output(x, i), m.next(x, i), i);
    }
  }
  return inv;
}

MealyMachine dual(const MealyMachine& m) {
  MealyMachine d(Automaton(m.automaton().letter_names(),
                           m.automaton().state_names()));
  for (StateId x = 0; x < m.num_states(); ++x) {
    for (LetterId i = 0; i < m.num_letters(); ++i) {
      d.set_transition(i, x, m.output(x, i), m.next(x, i));
    }
  }
  return d;
}

namespace {
  std::string join_names(const std::vector<std::string>& names,
                         std::span<const StateId>        u,
                         bool                            dotted) {
    std::string out;
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (dotted && k != 0) {
        out += '.';
      }
      out += names[u[k]];
    }
    return out;
  }
}  // namespace

MealyMachine power(const MealyMachine& m, unsigned n, std::size_t cap) {
  if (n == 0) {
    throw PreconditionViolated("power exponent must be positive");
  }
  if (n == 1) {
    return m;
  }
  auto const count = kernels::count_words(m.num_states(), n, cap);
  if (count == 0) {
    throw BudgetExceeded("power: more than " + std::to_string(cap)
                         + " states");
  }
  auto const table = kernels::parallel::power_table(m, n);

  auto const& names  = m.automaton().state_names();
  bool const  dotted = std::any_of(names.begin(), names.end(),
                                  [](auto& s) { return s.size() != 1; });
  std::vector<std::string> states;
  states.reserve(count);
  for (std::uint64_t w = 0; w < count; ++w) {
    states.push_back(
        join_names(names, kernels::decode_word(w, m.num_states(), n), dotted));
  }
  MealyMachine out(Automaton(std::move(states), m.automaton().letter_names()));
  auto const   k = m.num_letters();
  for (std::uint64_t w = 0; w < count; ++w) {
    for (LetterId i = 0; i < k; ++i) {
      out.set_transition(static_cast<StateId>(w), i,
                         static_cast<StateId>(table.next[w * k + i]),
                         table.output[w * k + i]);
    }
  }
  return out;
}

namespace {
  void check_states(const MealyMachine& m, std::span<const StateId> u) {
    for (auto x : u) {
      if (x >= m.num_states()) {
        throw UnknownSymbol("state id " + std::to_string(x)
                            + " out of range");
      }
    }
  }
  void check_letters(const MealyMachine& m, std::span<const LetterId> s) {
    for (auto i : s) {
      if (i >= m.num_letters()) {
        throw UnknownSymbol("letter id " + std::to_string(i)
                            + " out of range");
      }
    }
  }
}  // namespace

Word apply_rho(const MealyMachine&        m,
               std::span<const StateId>  u,
               std::span<const LetterId> s) {
  check_states(m, u);
  check_letters(m, s);
  Word w(s.begin(), s.end());
  for (StateId x : u) {
    StateId q = x;
    for (auto& c : w) {
      LetterId out = m.output(q, c);
      q            = m.next(q, c);
      c            = out;
    }
  }
  return w;
}

Word apply_delta(const MealyMachine&        m,
                 std::span<const LetterId> s,
                 std::span<const StateId>  u) {
  check_states(m, u);
  check_letters(m, s);
  Word w(u.begin(), u.end());
  for (LetterId i : s) {
    step_word(m, w, i);
  }
  return w;
}

}  // namespace mealy
