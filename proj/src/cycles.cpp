#include "mealy/cycles.hpp"

#include <algorithm>
#include <string>

#include "mealy/error.hpp"

namespace mealy {

bool Cycle::contains(StateId x) const {
  return std::find(states.begin(), states.end(), x) != states.end();
}

std::optional<std::size_t> Cycle::position(StateId x) const {
  auto it = std::find(states.begin(), states.end(), x);
  if (it == states.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - states.begin());
}

std::string_view to_string(ExitKind kind) {
  return kind == ExitKind::external ? "external" : "internal";
}

std::string_view to_string(ExitClass c) {
  switch (c) {
    case ExitClass::with_external_exit:
      return "with-external-exit";
    case ExitClass::with_internal_exit_only:
      return "with-internal-exit-only";
    case ExitClass::without_exit:
      return "without-exit";
  }
  return "unknown";
}

void check_cycle(const Automaton& a, const Cycle& c) {
  auto const n = c.length();
  if (n == 0 || c.letters.size() != n) {
    throw NotACycle("NotACycle: states and letters must be non-empty and "
                    "of equal length");
  }
  std::vector<bool> seen(a.num_states(), false);
  for (auto x : c.states) {
    if (x >= a.num_states()) {
      throw NotACycle("NotACycle: unknown state");
    }
    if (seen[x]) {
      throw NotACycle("NotACycle: state '" + a.state_name(x) + "' repeats");
    }
    seen[x] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (c.letters[k] >= a.num_letters()
        || a.next(c.states[k], c.letters[k]) != c.states[(k + 1) % n]) {
      throw NotACycle("NotACycle: transition " + std::to_string(k)
                      + " does not follow the automaton");
    }
  }
}

Word label_from(const Cycle& c, std::size_t k) {
  auto const n = c.length();
  if (k >= n) {
    throw PreconditionViolated("cycle position out of range");
  }
  Word label;
  label.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    label.push_back(c.letters[(k + p) % n]);
  }
  return label;
}

ExitReport classify_exits(const Automaton& a, const Cycle& c) {
  check_cycle(a, c);
  ExitReport report{c, {}, ExitClass::without_exit};
  auto const n = c.length();
  bool external = false;
  for (std::size_t k = 0; k < n; ++k) {
    auto const x         = c.states[k];
    auto const successor = c.states[(k + 1) % n];
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      auto const y = a.next(x, i);
      if (!c.contains(y)) {
        report.exits.push_back({x, i, y, ExitKind::external});
        external = true;
      } else if (y != successor) {
        report.exits.push_back({x, i, y, ExitKind::internal});
      }
    }
  }
  if (external) {
    report.classification = ExitClass::with_external_exit;
  } else if (!report.exits.empty()) {
    report.classification = ExitClass::with_internal_exit_only;
  }
  return report;
}

StronglyConnected strongly_connected(const Automaton& a) {
  // Iterative Tarjan.
  auto const n = a.num_states();
  auto const k = a.num_letters();
  StronglyConnected out;
  out.component.assign(n, static_cast<std::size_t>(-1));

  std::vector<std::size_t> index(n, static_cast<std::size_t>(-1));
  std::vector<std::size_t> low(n, 0);
  std::vector<bool>        on_stack(n, false);
  std::vector<StateId>     stack;
  std::vector<std::pair<StateId, LetterId>> frames;
  std::size_t counter = 0;

  for (StateId root = 0; root < n; ++root) {
    if (index[root] != static_cast<std::size_t>(-1)) {
      continue;
    }
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [x, i] = frames.back();
      if (i < k) {
        auto y = a.next(x, i++);
        if (index[y] == static_cast<std::size_t>(-1)) {
          index[y] = low[y] = counter++;
          stack.push_back(y);
          on_stack[y] = true;
          frames.emplace_back(y, 0);
        } else if (on_stack[y]) {
          low[x] = std::min(low[x], index[y]);
        }
        continue;
      }
      auto const done = x;
      frames.pop_back();
      if (!frames.empty()) {
        auto parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        StateId y;
        std::size_t size = 0;
        do {
          y = stack.back();
          stack.pop_back();
          on_stack[y]      = false;
          out.component[y] = out.count;
          ++size;
        } while (y != done);
        bool loop = false;
        for (LetterId j = 0; j < k && !loop; ++j) {
          loop = a.next(done, j) == done;
        }
        out.cyclic.push_back(size > 1 || loop);
        ++out.count;
      }
    }
  }
  return out;
}

std::optional<Cycle> cycle_through(const Automaton& a, StateId x, LetterId i) {
  auto const start = a.next(x, i);
  if (start == x) {
    return Cycle{{x}, {i}};
  }
  auto const n = a.num_states();
  std::vector<StateId>  parent(n, kUndefined);
  std::vector<LetterId> via(n, kUndefined);
  std::vector<StateId>  queue{start};
  parent[start] = start;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto q = queue[head];
    if (q == x) {
      break;
    }
    for (LetterId j = 0; j < a.num_letters(); ++j) {
      auto r = a.next(q, j);
      if (parent[r] == kUndefined) {
        parent[r] = q;
        via[r]    = j;
        queue.push_back(r);
      }
    }
  }
  if (parent[x] == kUndefined) {
    return std::nullopt;
  }
  Cycle c;
  // Walk back from x to start, then reverse.
  for (StateId q = x; q != start; q = parent[q]) {
    c.states.push_back(parent[q]);
    c.letters.push_back(via[q]);
  }
  std::reverse(c.states.begin(), c.states.end());
  std::reverse(c.letters.begin(), c.letters.end());
  c.states.insert(c.states.begin(), x);
  c.letters.insert(c.letters.begin(), i);
  return c;
}

CycleWitness externalize(const Automaton& a, const Cycle& c, const Exit& e) {
  check_cycle(a, c);
  auto const from = c.position(e.from);
  auto const to   = c.position(e.to);
  auto const n    = c.length();
  if (!from || !to || e.letter >= a.num_letters()
      || a.next(e.from, e.letter) != e.to || e.to == c.states[(*from + 1) % n]) {
    throw PreconditionViolated("externalize needs an internal exit of the "
                               "cycle");
  }
  CycleWitness out;
  for (std::size_t p = *to; p != *from; p = (p + 1) % n) {
    out.cycle.states.push_back(c.states[p]);
    out.cycle.letters.push_back(c.letters[p]);
  }
  out.cycle.states.push_back(e.from);
  out.cycle.letters.push_back(e.letter);
  out.exit = {e.from, c.letters[*from], c.states[(*from + 1) % n],
              ExitKind::external};
  return out;
}

std::optional<CycleWitness> find_cycle_with_exit(const Automaton& a) {
  auto const scc = strongly_connected(a);
  for (StateId x = 0; x < a.num_states(); ++x) {
    if (!scc.on_cycle(x)) {
      continue;
    }
    bool branching = false;
    for (LetterId i = 1; i < a.num_letters() && !branching; ++i) {
      branching = a.next(x, i) != a.next(x, 0);
    }
    if (!branching) {
      continue;
    }
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      if (scc.component[a.next(x, i)] != scc.component[x]) {
        continue;
      }
      auto cycle = cycle_through(a, x, i);
      if (!cycle) {
        continue;
      }
      auto report = classify_exits(a, *cycle);
      for (auto const& e : report.exits) {
        if (e.kind == ExitKind::external) {
          return CycleWitness{std::move(*cycle), e};
        }
      }
      // x has two distinct successors, so the cycle has some exit.
      return externalize(a, *cycle, report.exits.front());
    }
  }
  return std::nullopt;
}

std::vector<bool> reachable_from(const Automaton& a, StateId from) {
  std::vector<bool>    seen(a.num_states(), false);
  std::vector<StateId> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      auto r = a.next(q, i);
      if (!seen[r]) {
        seen[r] = true;
        stack.push_back(r);
      }
    }
  }
  return seen;
}

PruneResult prune(const Automaton& a) {
  auto const scc = strongly_connected(a);
  std::vector<bool>    keep(a.num_states(), false);
  std::vector<StateId> stack;
  for (StateId x = 0; x < a.num_states(); ++x) {
    if (scc.on_cycle(x)) {
      keep[x] = true;
      stack.push_back(x);
    }
  }
  if (stack.empty()) {
    throw EmptyResult();
  }
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      auto r = a.next(q, i);
      if (!keep[r]) {
        keep[r] = true;
        stack.push_back(r);
      }
    }
  }
  PruneResult out;
  std::vector<StateId>     renumber(a.num_states(), kUndefined);
  std::vector<std::string> names;
  for (StateId x = 0; x < a.num_states(); ++x) {
    if (keep[x]) {
      renumber[x] = static_cast<StateId>(out.kept.size());
      out.kept.push_back(x);
      names.push_back(a.state_name(x));
    } else {
      out.removed.push_back(x);
    }
  }
  out.automaton = Automaton(std::move(names), a.letter_names());
  for (StateId x = 0; x < out.kept.size(); ++x) {
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      out.automaton.set_next(x, i, renumber[a.next(out.kept[x], i)]);
    }
  }
  return out;
}

bool transition_on_cycle(const Automaton& a, StateId from, LetterId letter) {
  if (from >= a.num_states() || letter >= a.num_letters()) {
    throw UnknownSymbol("transition out of range");
  }
  return reachable_from(a, a.next(from, letter))[from];
}

}  // namespace mealy
