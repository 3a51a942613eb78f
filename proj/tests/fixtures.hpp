#pragma once

// Machines shared by the test suites, built directly through the API so the
// tests do not depend on the parser.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mealy/automaton.hpp"

namespace mealy::test {

inline std::string data_path(const std::string& name) {
  return std::string(MEALY_DATA_DIR) + "/" + name;
}

// x --0|1--> y, x --1|0--> x, y loops with identity output.
inline MealyMachine adding_machine() {
  MealyMachine m(Automaton({"x", "y"}, {"0", "1"}));
  m.set_transition(0, 0, 1, 1);
  m.set_transition(0, 1, 0, 0);
  m.set_transition(1, 0, 1, 0);
  m.set_transition(1, 1, 1, 1);
  return m;
}

inline MealyMachine adding_machine_dual() {
  MealyMachine m(Automaton({"0", "1"}, {"x", "y"}));
  m.set_transition(0, 0, 1, 1);  // 0 --x|y--> 1
  m.set_transition(0, 1, 0, 1);  // 0 --y|y--> 0
  m.set_transition(1, 0, 0, 0);  // 1 --x|x--> 0
  m.set_transition(1, 1, 1, 1);  // 1 --y|y--> 1
  return m;
}

// Cycles with external, internal and no exit. States 1..6 have ids 0..5;
// letters a, b have ids 0, 1.
inline Automaton six_state() {
  Automaton a({"1", "2", "3", "4", "5", "6"}, {"a", "b"});
  auto set = [&](int x, LetterId i, int y) {
    a.set_next(static_cast<StateId>(x - 1), i, static_cast<StateId>(y - 1));
  };
  set(1, 0, 2);
  set(1, 1, 2);
  set(2, 0, 3);
  set(2, 1, 3);
  set(3, 0, 4);
  set(3, 1, 1);
  set(4, 0, 1);
  set(4, 1, 4);
  set(5, 0, 2);
  set(5, 1, 6);
  set(6, 0, 6);
  set(6, 1, 6);
  return a;
}

// p loops on 0 and goes to q on 1; q goes to p on both letters.
inline Automaton restricted_example() {
  Automaton a({"p", "q"}, {"0", "1"});
  a.set_next(0, 0, 0);
  a.set_next(0, 1, 1);
  a.set_next(1, 0, 0);
  a.set_next(1, 1, 0);
  return a;
}

inline MealyMachine identity_machine(std::size_t states = 1,
                                     std::size_t letters = 2) {
  std::vector<std::string> s, l;
  for (std::size_t x = 0; x < states; ++x) {
    s.push_back("q" + std::to_string(x));
  }
  for (std::size_t i = 0; i < letters; ++i) {
    l.push_back(std::to_string(i));
  }
  MealyMachine m(Automaton(s, l));
  for (StateId x = 0; x < states; ++x) {
    for (LetterId i = 0; i < letters; ++i) {
      m.set_transition(x, i, x, i);
    }
  }
  return m;
}

inline Automaton bare_automaton(std::size_t states, std::size_t letters) {
  std::vector<std::string> s, l;
  for (std::size_t x = 0; x < states; ++x) {
    s.push_back("q" + std::to_string(x));
  }
  for (std::size_t i = 0; i < letters; ++i) {
    l.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  return Automaton(s, l);
}

inline Automaton random_automaton(std::mt19937_64& rng, std::size_t states,
                                  std::size_t letters) {
  auto a = bare_automaton(states, letters);
  std::uniform_int_distribution<StateId> pick(0, states - 1);
  for (StateId x = 0; x < states; ++x) {
    for (LetterId i = 0; i < letters; ++i) {
      a.set_next(x, i, pick(rng));
    }
  }
  return a;
}

inline Automaton random_reversible(std::mt19937_64& rng, std::size_t states,
                                   std::size_t letters) {
  auto a = bare_automaton(states, letters);
  std::vector<StateId> perm(states);
  for (LetterId i = 0; i < letters; ++i) {
    std::iota(perm.begin(), perm.end(), StateId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (StateId x = 0; x < states; ++x) {
      a.set_next(x, i, perm[x]);
    }
  }
  return a;
}

// Random outputs; permutations when `invertible`.
inline MealyMachine random_outputs(std::mt19937_64& rng, const Automaton& a,
                                   bool invertible) {
  MealyMachine m(a);
  std::uniform_int_distribution<LetterId> pick(0, a.num_letters() - 1);
  std::vector<LetterId> perm(a.num_letters());
  for (StateId x = 0; x < a.num_states(); ++x) {
    std::iota(perm.begin(), perm.end(), LetterId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      m.set_output(x, i, invertible ? perm[i] : pick(rng));
    }
  }
  return m;
}

}  // namespace mealy::test
