#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mealy/automaton.hpp"
#include "mealy/enrichment.hpp"
#include "mealy/production.hpp"

namespace mealy {

enum class VerdictKind { finite, infinite, unknown };

std::string_view to_string(VerdictKind k);

// Certificate tags. Each names the argument that makes a verdict sound; the
// *_dual variants were obtained on the dual machine and transferred.
enum class Certificate {
  none,
  no_cycle_with_exit,
  no_cycle_with_exit_dual,
  semigroup_order,
  semigroup_order_dual,
  splits_up_totally,
  splits_up_totally_dual,
  not_bireversible,         // invertible, reversible, not bireversible
  not_bireversible_pruned,
  not_bireversible_dual,
  construction,             // produced by enrich(); see `construction`
};

std::string_view to_string(Certificate c);

// One level of the splitting analysis of a reversible two-state machine:
// the connected components of its n-th power.
struct PowerLevel {
  unsigned                 level = 0;
  std::vector<std::size_t> component_sizes;
  // Index of the level-(n-1) component containing the prefixes; empty for
  // level 0.
  std::vector<std::size_t> parent;
  // Level n-1 splits up totally iff every component here has the size of
  // its parent. Always false for level 0.
  bool parent_splits = false;
  // Some u of length n-1 with u x and u y in one component, when the parent
  // level does not split.
  std::optional<Word> witness;
};

struct PowerTrace {
  std::vector<PowerLevel> levels;  // levels[n] describes the n-th power
};

// Evidence collected when no certificate applies. Never used as proof.
struct Evidence {
  // orbit_growth[x][n-1] = orbit size of a^n under rho_x (a the first letter),
  // or 0 when it exceeded the cap.
  std::vector<std::vector<std::uint64_t>> orbit_growth;
  std::optional<PowerTrace>               power_trace;
  bool                                    power_trace_on_dual = false;
  std::optional<std::size_t>              closure_elements;
  bool                                    closure_on_dual = false;
  bool                                    closure_size_capped = false;
};

struct Verdict {
  VerdictKind                 kind        = VerdictKind::unknown;
  Certificate                 certificate = Certificate::none;
  std::optional<std::size_t>  order;          // semigroup order
  std::optional<unsigned>     split_level;    // level that splits up totally
  std::optional<Construction> construction;
  Evidence                    evidence;
};

inline constexpr std::size_t kDefaultClosureBudget = 100'000;
inline constexpr unsigned    kDefaultMaxLevel      = 19;  // 2^19 < 10^6
inline constexpr std::uint64_t kDefaultOrbitCap    = std::uint64_t{1} << 20;
inline constexpr unsigned    kDefaultOrbitLevels   = 16;
// Total states over all stored element transducers.
inline constexpr std::size_t kDefaultClosureStateCap = std::size_t{1} << 22;

struct DecideConfig {
  std::size_t   budget       = kDefaultClosureBudget;
  unsigned      max_level    = kDefaultMaxLevel;
  std::uint64_t orbit_cap    = kDefaultOrbitCap;
  unsigned      orbit_levels = kDefaultOrbitLevels;
  std::size_t   state_cap    = kDefaultClosureStateCap;
};

// Applies MEALY_BUDGET and MEALY_MAX_LEVEL from the environment, when set.
DecideConfig config_from_environment(DecideConfig base = {});

// Finite, whatever the production functions, when no cycle has an exit.
std::optional<Verdict> check_no_exit_finite(const Automaton& a);

// Infinite group when invertible and reversible but not bireversible.
std::optional<Verdict> f4_check(const MealyMachine& m);

struct PumpingResult {
  Verdict    verdict;  // finite with split_level, or unknown
  PowerTrace trace;
};

// Builds the components of the powers level by level for a reversible
// machine with exactly two states. The first level that splits up totally
// certifies finiteness; otherwise the trace carries a witness per level.
PumpingResult pumping_scan(const MealyMachine& m, unsigned max_level);

struct ClosureResult {
  VerdictKind       kind = VerdictKind::unknown;  // finite or unknown
  std::size_t       elements = 0;
  // Unknown because the stored transducers outgrew the state cap rather
  // than because of the element budget.
  bool              size_capped = false;
  // Elements in discovery order; element k is element parent[k] followed by
  // the state last[k], or the single state last[k] when parent[k] is kNone.
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent;
  std::vector<StateId>     last;

  // Shortlex-least state word of element k.
  Word representative(std::size_t k) const;
};

struct ClosureOptions {
  // Also check every merge with the pairwise bisimulation comparator.
  bool verify_with_bisimulation = false;
  // Elements can need exponentially large transducers; stop with unknown
  // once their total state count passes this.
  std::size_t state_cap = kDefaultClosureStateCap;
};

// Breadth-first enumeration of the generated semigroup by word length. Stops
// with finite once a whole length adds nothing new, or with unknown when the
// element count would exceed `budget` or the transducers the state cap.
ClosureResult semigroup_closure(const MealyMachine& m, std::size_t budget,
                                ClosureOptions options = {});

// Size of {rho_g^k(s) : k >= 0}, or nullopt once it exceeds `cap`.
std::optional<std::uint64_t> orbit_size(const MealyMachine&        m,
                                        std::span<const StateId>  g,
                                        std::span<const LetterId> s,
                                        std::uint64_t             cap);

// Runs the sound certificates in order and falls back to unknown with
// evidence: structural on m and on its dual, the invertible-reversible test
// on m, its pruning and its dual, the splitting scan on a two-state reversible
// side, and finally the closure on the side with fewer states.
Verdict decide(const MealyMachine& m, const DecideConfig& config = {});

// Infinite verdict backed by the enrichment construction.
Verdict certify(const EnrichmentResult& r);

MealyMachine prune_machine(const MealyMachine& m);

struct SampleParams {
  std::size_t   states  = 1;
  std::size_t   letters = 2;
  std::uint64_t seed    = 0;
};

// Random automaton with no cycle with exit: some states form sink cycles on
// which every letter advances to the next state, the rest are ordered and
// only move to later states or into sinks. Deterministic for a fixed seed.
Automaton sample_no_exit(const SampleParams& params);

// Uniformly random permutation per state, deterministic for a fixed seed.
MealyMachine random_invertible_enrichment(const Automaton& a,
                                          std::uint64_t    seed);

}  // namespace mealy
