#pragma once

#include <optional>
#include <vector>

#include "mealy/automaton.hpp"

namespace mealy {

// x_0 --i_0--> x_1 ... x_{n-1} --i_{n-1}--> x_0 through pairwise distinct
// states. A self-loop is a cycle of length one.
struct Cycle {
  std::vector<StateId>  states;
  std::vector<LetterId> letters;

  std::size_t length() const noexcept { return states.size(); }
  bool        contains(StateId x) const;
  // Position of `x` on the cycle, or nullopt.
  std::optional<std::size_t> position(StateId x) const;

  bool operator==(const Cycle&) const = default;
};

enum class ExitKind { external, internal };

struct Exit {
  StateId  from;
  LetterId letter;
  StateId  to;
  ExitKind kind;

  bool operator==(const Exit&) const = default;
};

enum class ExitClass { with_external_exit, with_internal_exit_only, without_exit };

std::string_view to_string(ExitKind kind);
std::string_view to_string(ExitClass c);

struct ExitReport {
  Cycle             cycle;
  std::vector<Exit> exits;  // ordered by cycle position, then letter
  ExitClass         classification;
};

// A cycle together with one exit from it.
struct CycleWitness {
  Cycle cycle;
  Exit  exit;
};

// Throws NotACycle if the states repeat or a listed transition is wrong.
void check_cycle(const Automaton& a, const Cycle& c);

// Letters read around the cycle starting at position `k`.
Word label_from(const Cycle& c, std::size_t k);

ExitReport classify_exits(const Automaton& a, const Cycle& c);

// Strongly connected components in the order Tarjan's algorithm closes them,
// plus which of them carry a cycle (more than one state, or a self-loop).
struct StronglyConnected {
  std::vector<std::size_t> component;  // indexed by state
  std::vector<bool>        cyclic;     // indexed by component
  std::size_t              count = 0;

  bool on_cycle(StateId x) const { return cyclic[component[x]]; }
};

StronglyConnected strongly_connected(const Automaton& a);

// A simple cycle through `x` whose first transition reads `i`, or nullopt
// when delta_i(x) cannot reach x. Paths follow the smallest letters first.
std::optional<Cycle> cycle_through(const Automaton& a, StateId x, LetterId i);

// Finds the smallest on-cycle state with two distinct successors, builds a
// cycle through it, and returns it with an external exit (rerouting through
// an internal exit when necessary). nullopt when no cycle has an exit.
std::optional<CycleWitness> find_cycle_with_exit(const Automaton& a);

inline bool has_cycle_with_exit(const Automaton& a) {
  return find_cycle_with_exit(a).has_value();
}

// Reroutes `c` through the internal exit `e`: starting from e.to, follow the
// cycle until e.from, then take e. The skipped cycle transition out of e.from
// is an external exit of the result.
CycleWitness externalize(const Automaton& a, const Cycle& c, const Exit& e);

struct PruneResult {
  Automaton            automaton;
  std::vector<StateId> kept;     // new id -> original id
  std::vector<StateId> removed;  // original ids
};

// Keeps exactly the states reachable from some state on a cycle.
PruneResult prune(const Automaton& a);

// True iff the transition lies on some cycle, i.e. its target reaches its
// source.
bool transition_on_cycle(const Automaton& a, StateId from, LetterId letter);

// States reachable from `from`, including itself.
std::vector<bool> reachable_from(const Automaton& a, StateId from);

}  // namespace mealy
