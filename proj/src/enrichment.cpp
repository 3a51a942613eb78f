#include "mealy/enrichment.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "mealy/error.hpp"

namespace mealy {

namespace {
  constexpr std::array<std::pair<Construction, std::string_view>, 4> kNames{{
      {Construction::binary_external, "Lemma2Binary"},
      {Construction::no_return, "Lemma3NoReturn"},
      {Construction::reversible, "Lemma4Reversible"},
      {Construction::restricted_binary, "Theorem1Restricted"},
  }};
}  // namespace

std::string_view to_string(Construction c) {
  for (auto const& [k, name] : kNames) {
    if (k == c) {
      return name;
    }
  }
  return "unknown";
}

std::optional<Construction> construction_from_string(std::string_view s) {
  for (auto const& [k, name] : kNames) {
    if (name == s) {
      return k;
    }
  }
  return std::nullopt;
}

LetterMap identity_map(std::size_t num_letters) {
  LetterMap m(num_letters);
  std::iota(m.begin(), m.end(), LetterId{0});
  return m;
}

LetterMap transposition(std::size_t num_letters, LetterId i, LetterId j) {
  auto m = identity_map(num_letters);
  std::swap(m.at(i), m.at(j));
  return m;
}

namespace {
  std::vector<LetterMap> identities(const Automaton& a) {
    return std::vector<LetterMap>(a.num_states(),
                                  identity_map(a.num_letters()));
  }

  void check_exit_of(const Automaton& a, const Cycle& c, const Exit& e) {
    check_cycle(a, c);
    if (e.from >= a.num_states() || e.letter >= a.num_letters()
        || e.to >= a.num_states() || !c.contains(e.from)
        || a.next(e.from, e.letter) != e.to) {
      throw PreconditionViolated("exit is not a transition from the cycle");
    }
    if (c.contains(e.to)) {
      throw PreconditionViolated("exit must be external");
    }
  }
}  // namespace

MealyMachine enrich_binary_external(const Automaton& a, const Cycle& c,
                                    const Exit& e) {
  if (a.num_letters() != 2) {
    throw PreconditionViolated("the two-letter construction needs a binary "
                               "alphabet");
  }
  check_exit_of(a, c, e);
  auto rho  = identities(a);
  rho[e.to] = transposition(2, 0, 1);
  return enrich_with(a, rho);
}

MealyMachine enrich_no_return(const Automaton& a, const Cycle& c,
                              const Exit& e) {
  check_exit_of(a, c, e);
  auto const reach = reachable_from(a, e.to);
  for (auto x : c.states) {
    if (reach[x]) {
      throw PreconditionViolated("the cycle is reachable from the exit "
                                 "target");
    }
  }
  auto const j = c.letters[*c.position(e.from)];
  if (j == e.letter) {
    throw PreconditionViolated("exit letter coincides with the cycle letter");
  }
  auto rho    = identities(a);
  rho[e.from] = transposition(a.num_letters(), e.letter, j);
  return enrich_with(a, rho);
}

std::optional<MergingPair> find_merging_pair(const Automaton& a) {
  for (StateId x = 0; x < a.num_states(); ++x) {
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      auto const z = a.next(x, i);
      for (StateId y = 0; y < a.num_states(); ++y) {
        if (y == x) {
          continue;
        }
        for (LetterId j = 0; j < a.num_letters(); ++j) {
          if (a.next(y, j) == z) {
            return MergingPair{x, i, y, j, z};
          }
        }
      }
    }
  }
  return std::nullopt;
}

MealyMachine enrich_reversible(const Automaton& a) {
  if (!is_reversible(a)) {
    throw PreconditionViolated("the merging construction needs a reversible "
                               "automaton");
  }
  auto pair = find_merging_pair(a);
  if (!pair) {
    throw NoSuchTriple();
  }
  auto rho = identities(a);
  if (pair->x_letter != pair->y_letter) {
    rho[pair->y] = transposition(a.num_letters(), pair->x_letter,
                                 pair->y_letter);
  }
  return enrich_with(a, rho);
}

IPathResult find_i_path_cycle(const Automaton& a, StateId x, LetterId i) {
  if (x >= a.num_states() || i >= a.num_letters()) {
    throw UnknownSymbol("state or letter out of range");
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (a.next(q, i) == x) {
      throw PreconditionViolated("state has an incoming transition on the "
                                 "letter");
    }
  }
  std::vector<std::size_t> visited_at(a.num_states(),
                                      static_cast<std::size_t>(-1));
  std::vector<StateId>     path;
  StateId                  q = x;
  while (visited_at[q] == static_cast<std::size_t>(-1)) {
    visited_at[q] = path.size();
    path.push_back(q);
    q = a.next(q, i);
  }
  IPathResult out;
  out.x       = x;
  out.i       = i;
  out.y       = q;
  out.n       = visited_at[q];
  out.x_prime = path[out.n - 1];
  for (auto p = out.n; p < path.size(); ++p) {
    out.cycle.states.push_back(path[p]);
    out.cycle.letters.push_back(i);
  }
  return out;
}

Automaton restrict_alphabet(const Automaton& a, LetterId i, LetterId j) {
  if (i == j || i >= a.num_letters() || j >= a.num_letters()) {
    throw PreconditionViolated("restriction needs two distinct letters");
  }
  auto const lo = std::min(i, j);
  auto const hi = std::max(i, j);
  Automaton  b(a.state_names(), {a.letter_name(lo), a.letter_name(hi)});
  for (StateId x = 0; x < a.num_states(); ++x) {
    b.set_next(x, 0, a.next(x, lo));
    b.set_next(x, 1, a.next(x, hi));
  }
  return b;
}

Enrichment complete_permutations(const Enrichment&          partial,
                                 std::span<const LetterId> letters,
                                 std::size_t               num_letters) {
  Enrichment out{{}, partial.certificate};
  out.perms.reserve(partial.perms.size());
  for (auto const& p : partial.perms) {
    if (p.size() != letters.size()) {
      throw PreconditionViolated("partial permutation has the wrong size");
    }
    std::vector<bool> hit(letters.size(), false);
    auto full = identity_map(num_letters);
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (p[k] >= letters.size() || hit[p[k]]) {
        throw PreconditionViolated("partial map is not a permutation");
      }
      hit[p[k]]            = true;
      full.at(letters[k])  = letters[p[k]];
    }
    out.perms.push_back(std::move(full));
  }
  return out;
}

MealyMachine restrict_machine(const MealyMachine&        m,
                              std::span<const LetterId> letters) {
  std::vector<std::string> names;
  for (auto l : letters) {
    names.push_back(m.automaton().letter_name(l));
  }
  MealyMachine out(Automaton(m.automaton().state_names(), std::move(names)));
  for (StateId x = 0; x < m.num_states(); ++x) {
    for (LetterId k = 0; k < letters.size(); ++k) {
      auto o  = m.output(x, letters[k]);
      auto it = std::find(letters.begin(), letters.end(), o);
      if (it == letters.end()) {
        throw PreconditionViolated("output leaves the restricted alphabet");
      }
      out.set_transition(x, k, m.next(x, letters[k]),
                         static_cast<LetterId>(it - letters.begin()));
    }
  }
  return out;
}

std::optional<CycleWitness> find_no_return_exit(const Automaton& a) {
  auto const scc = strongly_connected(a);
  for (StateId u = 0; u < a.num_states(); ++u) {
    if (!scc.on_cycle(u)) {
      continue;
    }
    for (LetterId l = 0; l < a.num_letters(); ++l) {
      auto const w = a.next(u, l);
      if (scc.component[w] == scc.component[u]) {
        continue;
      }
      for (LetterId k = 0; k < a.num_letters(); ++k) {
        if (scc.component[a.next(u, k)] != scc.component[u]) {
          continue;
        }
        auto cycle = cycle_through(a, u, k);
        if (cycle) {
          return CycleWitness{std::move(*cycle),
                              Exit{u, l, w, ExitKind::external}};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {
  std::vector<LetterMap> perms_of(const MealyMachine& m) {
    std::vector<LetterMap> out;
    for (StateId x = 0; x < m.num_states(); ++x) {
      auto f = m.output_function(x);
      out.emplace_back(f.begin(), f.end());
    }
    return out;
  }

  Cycle to_original(const Cycle& c, const std::vector<StateId>& kept) {
    Cycle out = c;
    for (auto& x : out.states) {
      x = kept[x];
    }
    return out;
  }

  Exit to_original(Exit e, const std::vector<StateId>& kept) {
    e.from = kept[e.from];
    e.to   = kept[e.to];
    return e;
  }

  IPathResult to_original(IPathResult r, const std::vector<StateId>& kept) {
    r.x       = kept[r.x];
    r.y       = kept[r.y];
    r.x_prime = kept[r.x_prime];
    r.cycle   = to_original(r.cycle, kept);
    return r;
  }

  bool any_transition_off_cycle(const Automaton& a) {
    auto const scc = strongly_connected(a);
    for (StateId x = 0; x < a.num_states(); ++x) {
      for (LetterId i = 0; i < a.num_letters(); ++i) {
        if (scc.component[a.next(x, i)] != scc.component[x]) {
          return true;
        }
      }
    }
    return false;
  }

  std::optional<std::pair<StateId, LetterId>>
  missing_incoming(const Automaton& a) {
    std::vector<bool> hit(a.num_states() * a.num_letters(), false);
    for (StateId q = 0; q < a.num_states(); ++q) {
      for (LetterId i = 0; i < a.num_letters(); ++i) {
        hit[static_cast<std::size_t>(a.next(q, i)) * a.num_letters() + i]
            = true;
      }
    }
    for (StateId x = 0; x < a.num_states(); ++x) {
      for (LetterId i = 0; i < a.num_letters(); ++i) {
        if (!hit[static_cast<std::size_t>(x) * a.num_letters() + i]) {
          return std::pair{x, i};
        }
      }
    }
    return std::nullopt;
  }
}  // namespace

EnrichmentResult enrich(const Automaton& a) {
  if (!has_cycle_with_exit(a)) {
    throw NoExitCycle();
  }
  EnrichmentResult result;
  result.pruning        = prune(a);
  auto const& pruned    = result.pruning.automaton;
  auto const& kept      = result.pruning.kept;
  MealyMachine local;

  if (any_transition_off_cycle(pruned)) {
    auto witness = find_no_return_exit(pruned);
    if (!witness) {
      // Unreachable in a pruned automaton: every state descends from a
      // cyclic component, so some transition leaves one.
      throw PreconditionViolated("no transition leaves a cyclic component");
    }
    local              = enrich_no_return(pruned, witness->cycle, witness->exit);
    result.certificate = Construction::no_return;
    result.cycle       = to_original(witness->cycle, kept);
    result.exit        = to_original(witness->exit, kept);
  } else if (is_reversible(pruned)) {
    local              = enrich_reversible(pruned);
    result.certificate = Construction::reversible;
    auto pair          = *find_merging_pair(pruned);
    pair.x             = kept[pair.x];
    pair.y             = kept[pair.y];
    pair.z             = kept[pair.z];
    result.merging     = pair;
  } else {
    auto const [x, i] = *missing_incoming(pruned);
    auto path         = find_i_path_cycle(pruned, x, i);

    std::vector<StateId> on_cycle = path.cycle.states;
    std::sort(on_cycle.begin(), on_cycle.end());
    std::optional<Exit> exit;
    for (auto q : on_cycle) {
      for (LetterId j = 0; j < pruned.num_letters() && !exit; ++j) {
        auto t = pruned.next(q, j);
        if (j != i && !path.cycle.contains(t)) {
          exit = Exit{q, j, t, ExitKind::external};
        }
      }
      if (exit) {
        break;
      }
    }
    if (!exit) {
      throw PreconditionViolated("the i-cycle has no external exit");
    }
    auto const b      = restrict_alphabet(pruned, i, exit->letter);
    auto const lo     = std::min(i, exit->letter);
    auto const local_of = [lo](LetterId l) -> LetterId {
      return l == lo ? 0 : 1;
    };
    Cycle local_cycle = path.cycle;
    for (auto& l : local_cycle.letters) {
      l = local_of(l);
    }
    Exit local_exit   = *exit;
    local_exit.letter = local_of(exit->letter);
    auto const binary = enrich_binary_external(b, local_cycle, local_exit);

    std::vector<LetterId> letters{lo, std::max(i, exit->letter)};
    auto full = complete_permutations(
        {perms_of(binary), Construction::restricted_binary}, letters,
        pruned.num_letters());
    local                     = enrich_with(pruned, full.perms);
    result.certificate        = Construction::restricted_binary;
    result.cycle              = to_original(path.cycle, kept);
    result.exit               = to_original(*exit, kept);
    result.i_path             = to_original(path, kept);
    result.restricted_letters = letters;
  }

  result.pruned = local;
  auto perms    = identities(a);
  for (StateId q = 0; q < kept.size(); ++q) {
    auto f          = local.output_function(q);
    perms[kept[q]]  = LetterMap(f.begin(), f.end());
  }
  result.machine = enrich_with(a, perms);
  return result;
}

}  // namespace mealy
