#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mealy/automaton.hpp"
#include "mealy/cycles.hpp"

namespace mealy {

// Which construction chose the production functions. The wire names are the
// certificate tags used in reports.
enum class Construction {
  binary_external,     // "Lemma2Binary"
  no_return,           // "Lemma3NoReturn"
  reversible,          // "Lemma4Reversible"
  restricted_binary,   // "Theorem1Restricted"
};

std::string_view             to_string(Construction c);
std::optional<Construction>  construction_from_string(std::string_view s);

// One alphabet permutation per state plus the construction that produced it.
struct Enrichment {
  std::vector<LetterMap> perms;
  Construction           certificate;
};

LetterMap identity_map(std::size_t num_letters);
LetterMap transposition(std::size_t num_letters, LetterId i, LetterId j);

// Over a two-letter alphabet: the target of the external exit `e` swaps the
// letters, every other state is the identity. Then rho_x(s^n i c) = s^n i c'
// for the label s of `c` from x = e.from and c' the letter other than c.
MealyMachine enrich_binary_external(const Automaton& a, const Cycle& c,
                                    const Exit& e);

// With s = j t the label of `c` from x = e.from, rho_x is the transposition of
// e.letter and j and all other states are the identity. Requires that no
// state of `c` is reachable from e.to; then rho_x counts in binary on the
// words (j t)^n, whose orbit has 2^n elements.
MealyMachine enrich_no_return(const Automaton& a, const Cycle& c,
                              const Exit& e);

// Two transitions x --i--> z and y --i'--> z with x != y, chosen with the
// smallest x, then letter, then y, then letter.
struct MergingPair {
  StateId  x;
  LetterId x_letter;
  StateId  y;
  LetterId y_letter;
  StateId  z;
};

std::optional<MergingPair> find_merging_pair(const Automaton& a);

// For a reversible automaton: rho_x is the identity and rho_y the
// transposition sending y_letter to x_letter, so both transitions into z emit
// the same letter. The result is invertible and reversible but not
// bireversible. Throws NoSuchTriple when no merging pair exists.
MealyMachine enrich_reversible(const Automaton& a);

// The delta_i-path from a state without incoming i-transition.
struct IPathResult {
  StateId     x;
  LetterId    i;
  StateId     y;        // first state that the path visits twice
  Cycle       cycle;    // the i-cycle through y, starting at y
  StateId     x_prime;  // the state before y on the path, not on the cycle
  std::size_t n;        // y = delta_i^n(x), n > 0 minimal
};

IPathResult find_i_path_cycle(const Automaton& a, StateId x, LetterId i);

// Same stateset; alphabet {i, j} in declaration order; transitions kept.
Automaton restrict_alphabet(const Automaton& a, LetterId i, LetterId j);

// Extends permutations of the letters `letters` (listed by their global ids)
// to the whole alphabet, fixing every other letter.
Enrichment complete_permutations(const Enrichment&          partial,
                                 std::span<const LetterId> letters,
                                 std::size_t               num_letters);

struct EnrichmentResult {
  MealyMachine         machine;       // on the original stateset
  Construction         certificate;
  PruneResult          pruning;
  MealyMachine         pruned;        // machine restricted to kept states
  Cycle                cycle;         // original ids; empty for reversible
  std::optional<Exit>  exit;          // original ids; none for reversible
  std::optional<MergingPair> merging; // reversible construction only
  std::optional<IPathResult> i_path;  // restricted construction only
  std::vector<LetterId>      restricted_letters;  // restricted only
};

// Chooses production functions for an automaton with a cycle with exit so
// that the resulting invertible machine generates an infinite group:
//  1. prune to the states reachable from cycles;
//  2. if some transition is off every cycle, use a transition leaving a
//     cyclic strongly connected component with the no-return construction;
//  3. otherwise, if reversible, use the merging construction;
//  4. otherwise take the smallest (x, i) with no incoming i-transition into
//     x, follow the i-path to its cycle C, take C's smallest external exit on
//     a letter j, and apply the two-letter construction to the automaton
//     restricted to {i, j}, completed by the identity.
// Pruned-away states get the identity. Throws NoExitCycle when the automaton
// has no cycle with exit.
EnrichmentResult enrich(const Automaton& a);

// Cycle and external exit for the no-return construction in a pruned
// automaton: the smallest (state, letter) leaving a cyclic strongly connected
// component, with the cycle through that state.
std::optional<CycleWitness> find_no_return_exit(const Automaton& a);

// Outputs restricted to the letters of `letters`, re-indexed accordingly.
// Every output on those letters must stay inside them.
MealyMachine restrict_machine(const MealyMachine&        m,
                              std::span<const LetterId> letters);

}  // namespace mealy
