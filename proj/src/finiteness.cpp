#include "mealy/finiteness.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "mealy/cycles.hpp"
#include "mealy/error.hpp"
#include "mealy/kernels.hpp"

namespace mealy {

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::finite:
      return "Finite";
    case VerdictKind::infinite:
      return "Infinite";
    case VerdictKind::unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(Certificate c) {
  switch (c) {
    case Certificate::none:
      return "none";
    case Certificate::no_cycle_with_exit:
      return "no-cycle-with-exit";
    case Certificate::no_cycle_with_exit_dual:
      return "no-cycle-with-exit-dual";
    case Certificate::semigroup_order:
      return "semigroup-order";
    case Certificate::semigroup_order_dual:
      return "semigroup-order-dual";
    case Certificate::splits_up_totally:
      return "splits-up-totally";
    case Certificate::splits_up_totally_dual:
      return "splits-up-totally-dual";
    case Certificate::not_bireversible:
      return "F4";
    case Certificate::not_bireversible_pruned:
      return "F4-pruned";
    case Certificate::not_bireversible_dual:
      return "F4-dual";
    case Certificate::construction:
      return "construction";
  }
  return "none";
}

namespace {
  template <typename T>
  void read_env(const char* name, T& out) {
    const char* value = std::getenv(name);
    if (value == nullptr) {
      return;
    }
    T parsed{};
    auto [ptr, ec] = std::from_chars(value, value + std::strlen(value), parsed);
    if (ec == std::errc{} && *ptr == '\0') {
      out = parsed;
    }
  }
}  // namespace

DecideConfig config_from_environment(DecideConfig base) {
  read_env("MEALY_BUDGET", base.budget);
  read_env("MEALY_MAX_LEVEL", base.max_level);
  return base;
}

////////////////////////////////////////////////////////////////////////////
// Structural certificates
////////////////////////////////////////////////////////////////////////////

std::optional<Verdict> check_no_exit_finite(const Automaton& a) {
  if (has_cycle_with_exit(a)) {
    return std::nullopt;
  }
  Verdict v;
  v.kind        = VerdictKind::finite;
  v.certificate = Certificate::no_cycle_with_exit;
  return v;
}

std::optional<Verdict> f4_check(const MealyMachine& m) {
  if (is_invertible(m) && is_reversible(m) && !is_bireversible(m)) {
    Verdict v;
    v.kind        = VerdictKind::infinite;
    v.certificate = Certificate::not_bireversible;
    return v;
  }
  return std::nullopt;
}

MealyMachine prune_machine(const MealyMachine& m) {
  auto p = prune(m.automaton());
  MealyMachine out(std::move(p.automaton));
  for (StateId x = 0; x < p.kept.size(); ++x) {
    for (LetterId i = 0; i < m.num_letters(); ++i) {
      out.set_output(x, i, m.output(p.kept[x], i));
    }
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Splitting scan
////////////////////////////////////////////////////////////////////////////

PumpingResult pumping_scan(const MealyMachine& m, unsigned max_level) {
  if (m.num_states() != 2) {
    throw PreconditionViolated("the splitting scan needs exactly two states");
  }
  if (!is_reversible(m)) {
    throw PreconditionViolated("the splitting scan needs a reversible "
                               "machine");
  }
  PumpingResult out;
  out.verdict.kind = VerdictKind::unknown;

  PowerLevel root;
  root.level           = 0;
  root.component_sizes = {1};
  out.trace.levels.push_back(std::move(root));

  std::vector<std::uint32_t> previous{0};  // component index per word
  for (unsigned n = 1; n <= max_level; ++n) {
    auto const labels = kernels::parallel::component_labels(m, n);
    PowerLevel level;
    level.level = n;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<std::uint32_t> component(labels.size());
    for (std::uint64_t w = 0; w < labels.size(); ++w) {
      auto [it, fresh] = index.try_emplace(
          labels[w], static_cast<std::uint32_t>(level.component_sizes.size()));
      if (fresh) {
        level.component_sizes.push_back(0);
        // The label is the smallest word of the component; its prefix lies
        // in the parent component.
        level.parent.push_back(previous[labels[w] / 2]);
      }
      component[w] = it->second;
      ++level.component_sizes[it->second];
    }
    auto const& parent_sizes = out.trace.levels.back().component_sizes;
    level.parent_splits      = true;
    for (std::size_t c = 0; c < level.component_sizes.size(); ++c) {
      if (level.component_sizes[c] != parent_sizes[level.parent[c]]) {
        level.parent_splits = false;
      }
    }
    if (!level.parent_splits) {
      for (std::uint64_t u = 0; u < previous.size(); ++u) {
        if (component[2 * u] == component[2 * u + 1]) {
          level.witness = kernels::decode_word(u, 2, n - 1);
          break;
        }
      }
    }
    bool const split = level.parent_splits;
    out.trace.levels.push_back(std::move(level));
    previous.swap(component);
    if (split) {
      out.verdict.kind        = VerdictKind::finite;
      out.verdict.certificate = Certificate::splits_up_totally;
      out.verdict.split_level = n - 1;
      break;
    }
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Closure
////////////////////////////////////////////////////////////////////////////

Word ClosureResult::representative(std::size_t k) const {
  Word w;
  for (; k != kNone; k = parent.at(k)) {
    w.push_back(last[k]);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

ClosureResult semigroup_closure(const MealyMachine& m, std::size_t budget,
                                ClosureOptions options) {
  ClosureResult out;
  std::unordered_map<ElementCode, std::size_t, ElementCodeHash> index;
  std::vector<const ElementCode*>                               codes;
  std::optional<ProductionComparator>                           cmp;
  std::size_t                                                   total_states = 0;
  if (options.verify_with_bisimulation) {
    cmp.emplace(m);
  }

  // Returns false once the budget is exhausted.
  auto add = [&](ElementCode code, std::size_t parent, StateId x,
                 std::vector<std::size_t>& frontier) {
    auto [it, fresh] = index.try_emplace(std::move(code), codes.size());
    if (!fresh) {
      if (cmp) {
        Word word = parent == ClosureResult::kNone ? Word{}
                                                   : out.representative(parent);
        word.push_back(x);
        if (!cmp->equal(word, out.representative(it->second))) {
          throw std::logic_error("closure merged unequal elements");
        }
      }
      return true;
    }
    if (codes.size() == budget) {
      return false;
    }
    total_states += it->first.front();
    if (total_states > options.state_cap) {
      out.size_capped = true;
      return false;
    }
    codes.push_back(&it->first);
    out.parent.push_back(parent);
    out.last.push_back(x);
    frontier.push_back(codes.size() - 1);
    return true;
  };

  std::vector<std::size_t> frontier;
  for (StateId x = 0; x < m.num_states(); ++x) {
    if (!add(generator_code(m, x), ClosureResult::kNone, x, frontier)) {
      out.elements = codes.size();
      return out;
    }
  }
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto r : frontier) {
      for (StateId x = 0; x < m.num_states(); ++x) {
        if (!add(compose_code(m, *codes[r], x), r, x, next)) {
          out.elements = codes.size();
          return out;
        }
      }
    }
    frontier.swap(next);
  }
  out.kind     = VerdictKind::finite;
  out.elements = codes.size();
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Orbits
////////////////////////////////////////////////////////////////////////////

std::optional<std::uint64_t> orbit_size(const MealyMachine&        m,
                                        std::span<const StateId>  g,
                                        std::span<const LetterId> s,
                                        std::uint64_t             cap) {
  std::unordered_set<Word, WordHash> seen;
  Word current = apply_rho(m, {}, s);  // validates s
  for (auto x : g) {
    if (x >= m.num_states()) {
      throw UnknownSymbol("state id out of range");
    }
  }
  while (seen.insert(current).second) {
    if (seen.size() > cap) {
      return std::nullopt;
    }
    for (StateId x : g) {
      StateId q = x;
      for (auto& c : current) {
        LetterId o = m.output(q, c);
        q          = m.next(q, c);
        c          = o;
      }
    }
  }
  return seen.size();
}

////////////////////////////////////////////////////////////////////////////
// Orchestration
////////////////////////////////////////////////////////////////////////////

namespace {
  Evidence gather_orbits(const MealyMachine& m, const DecideConfig& config) {
    Evidence e;
    for (StateId x = 0; x < m.num_states(); ++x) {
      std::vector<std::uint64_t> growth;
      StateId const              g[] = {x};
      for (unsigned n = 1; n <= config.orbit_levels; ++n) {
        Word s(n, 0);
        auto size = orbit_size(m, g, s, config.orbit_cap);
        growth.push_back(size.value_or(0));
        if (!size) {
          break;
        }
      }
      e.orbit_growth.push_back(std::move(growth));
    }
    return e;
  }
}  // namespace

Verdict decide(const MealyMachine& m, const DecideConfig& config) {
  auto const problems = validate(m);
  if (!structurally_sound(problems)) {
    std::vector<std::string> msgs;
    for (auto const& d : problems) {
      msgs.push_back(d.message);
    }
    throw InvalidMachine(std::move(msgs));
  }

  if (auto v = check_no_exit_finite(m.automaton())) {
    return *v;
  }
  auto const d = dual(m);
  if (auto v = check_no_exit_finite(d.automaton())) {
    v->certificate = Certificate::no_cycle_with_exit_dual;
    return *v;
  }

  if (auto v = f4_check(m)) {
    return *v;
  }
  if (auto v = f4_check(prune_machine(m))) {
    v->certificate = Certificate::not_bireversible_pruned;
    return *v;
  }
  if (auto v = f4_check(d)) {
    v->certificate = Certificate::not_bireversible_dual;
    return *v;
  }

  Evidence evidence;
  auto scan = [&](const MealyMachine& side, bool on_dual)
      -> std::optional<Verdict> {
    if (side.num_states() != 2 || !is_reversible(side)) {
      return std::nullopt;
    }
    auto r = pumping_scan(side, config.max_level);
    if (r.verdict.kind == VerdictKind::finite) {
      if (on_dual) {
        r.verdict.certificate = Certificate::splits_up_totally_dual;
      }
      return r.verdict;
    }
    if (!evidence.power_trace) {
      evidence.power_trace         = std::move(r.trace);
      evidence.power_trace_on_dual = on_dual;
    }
    return std::nullopt;
  };
  if (auto v = scan(m, false)) {
    return *v;
  }
  if (auto v = scan(d, true)) {
    return *v;
  }

  bool const  on_dual = d.num_states() < m.num_states();
  auto const  closure = semigroup_closure(on_dual ? d : m, config.budget,
                                          {false, config.state_cap});
  if (closure.kind == VerdictKind::finite) {
    Verdict v;
    v.kind        = VerdictKind::finite;
    v.certificate = on_dual ? Certificate::semigroup_order_dual
                            : Certificate::semigroup_order;
    v.order       = closure.elements;
    return v;
  }

  Verdict v;
  v.kind     = VerdictKind::unknown;
  auto orbits = gather_orbits(m, config);
  v.evidence                  = std::move(evidence);
  v.evidence.orbit_growth     = std::move(orbits.orbit_growth);
  v.evidence.closure_elements = closure.elements;
  v.evidence.closure_on_dual  = on_dual;
  v.evidence.closure_size_capped = closure.size_capped;
  return v;
}

Verdict certify(const EnrichmentResult& r) {
  Verdict v;
  v.kind         = VerdictKind::infinite;
  v.certificate  = Certificate::construction;
  v.construction = r.certificate;
  return v;
}

////////////////////////////////////////////////////////////////////////////
// Sampling
////////////////////////////////////////////////////////////////////////////

Automaton sample_no_exit(const SampleParams& params) {
  if (params.states < 1 || params.letters < 2) {
    throw PreconditionViolated("sampling needs at least one state and two "
                               "letters");
  }
  std::mt19937_64 rng(params.seed);
  auto uniform = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto const n      = params.states;
  auto const sinks  = uniform(1, n);
  auto const first  = n - sinks;  // sink states are first..n-1

  std::vector<std::string> states, letters;
  for (std::size_t x = 0; x < n; ++x) {
    states.push_back("s" + std::to_string(x));
  }
  for (std::size_t i = 0; i < params.letters; ++i) {
    letters.push_back(std::to_string(i));
  }
  Automaton a(std::move(states), std::move(letters));

  for (std::size_t start = first; start < n;) {
    auto const length = uniform(1, n - start);
    for (std::size_t p = 0; p < length; ++p) {
      auto const x  = static_cast<StateId>(start + p);
      auto const to = static_cast<StateId>(start + (p + 1) % length);
      for (LetterId i = 0; i < params.letters; ++i) {
        a.set_next(x, i, to);
      }
    }
    start += length;
  }
  for (std::size_t x = 0; x < first; ++x) {
    // Later transient states and all sink states.
    auto const choices = n - x - 1;
    for (LetterId i = 0; i < params.letters; ++i) {
      a.set_next(static_cast<StateId>(x), i,
                 static_cast<StateId>(x + 1 + uniform(0, choices - 1)));
    }
  }
  return a;
}

MealyMachine random_invertible_enrichment(const Automaton& a,
                                          std::uint64_t    seed) {
  std::mt19937_64        rng(seed);
  std::vector<LetterMap> rho;
  for (StateId x = 0; x < a.num_states(); ++x) {
    auto p = identity_map(a.num_letters());
    std::shuffle(p.begin(), p.end(), rng);
    rho.push_back(std::move(p));
  }
  return enrich_with(a, rho);
}

}  // namespace mealy
