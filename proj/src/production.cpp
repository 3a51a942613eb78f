#include "mealy/production.hpp"

#include <deque>
#include <unordered_map>

#include "mealy/error.hpp"

namespace mealy {

std::size_t WordHash::operator()(const Word& w) const noexcept {
  // FNV-1a over the symbols.
  std::size_t h = 1469598103934665603ULL;
  for (auto c : w) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::size_t ElementCodeHash::operator()(const ElementCode& c) const noexcept {
  return WordHash{}(c);
}

////////////////////////////////////////////////////////////////////////////
// Pairwise bisimulation
////////////////////////////////////////////////////////////////////////////

namespace {
  Word pair_key(std::span<const StateId> u, std::span<const StateId> v) {
    Word key;
    key.reserve(u.size() + v.size() + 1);
    key.insert(key.end(), u.begin(), u.end());
    key.push_back(kUndefined);
    key.insert(key.end(), v.begin(), v.end());
    return key;
  }
}  // namespace

bool ProductionComparator::equal(std::span<const StateId> u,
                                 std::span<const StateId> v) {
  auto const& m = *machine_;
  for (auto x : u) {
    if (x >= m.num_states()) {
      throw UnknownSymbol("state id out of range");
    }
  }
  for (auto x : v) {
    if (x >= m.num_states()) {
      throw UnknownSymbol("state id out of range");
    }
  }
  if (std::equal(u.begin(), u.end(), v.begin(), v.end())) {
    return true;
  }

  std::unordered_set<Word, WordHash>     visited;
  std::deque<std::pair<Word, Word>>      todo;
  auto root = pair_key(u, v);
  if (proven_.contains(root)) {
    return true;
  }
  visited.insert(root);
  todo.emplace_back(Word(u.begin(), u.end()), Word(v.begin(), v.end()));

  Word a, b;
  while (!todo.empty()) {
    auto [pu, pv] = std::move(todo.front());
    todo.pop_front();
    if (proven_.contains(pair_key(pu, pv))) {
      continue;
    }
    for (LetterId i = 0; i < m.num_letters(); ++i) {
      a = pu;
      b = pv;
      if (step_word(m, a, i) != step_word(m, b, i)) {
        return false;
      }
      if (a == b) {
        continue;
      }
      auto key = pair_key(a, b);
      if (visited.insert(key).second) {
        todo.emplace_back(a, b);
      }
    }
  }
  // Every visited pair lies in a bisimulation, so all of them are equal.
  proven_.merge(visited);
  return true;
}

bool equal_production(const MealyMachine&      m,
                      std::span<const StateId> u,
                      std::span<const StateId> v) {
  ProductionComparator cmp(m);
  return cmp.equal(u, v);
}

////////////////////////////////////////////////////////////////////////////
// Canonical minimal transducers
////////////////////////////////////////////////////////////////////////////

namespace {
  // An initial transducer whose states are 0..n-1 with state 0 the root.
  struct Transducer {
    std::size_t           num_letters = 0;
    std::size_t           size        = 0;
    std::vector<LetterId> out;   // [q * k + i]
    std::vector<uint32_t> succ;  // [q * k + i]
  };

  // Coarsest partition of the states compatible with outputs and
  // successors, by Hopcroft's refinement. Returns the block of every state
  // and the number of blocks.
  std::size_t refine(const Transducer& t, std::vector<std::uint32_t>& block) {
    auto const k = t.num_letters;
    auto const n = t.size;

    // Initial partition by output vector.
    block.assign(n, 0);
    std::size_t num_blocks = 0;
    {
      std::unordered_map<Word, std::uint32_t, WordHash> ids;
      Word                                              key(k);
      for (std::size_t q = 0; q < n; ++q) {
        std::copy_n(t.out.begin() + q * k, k, key.begin());
        auto [it, fresh] = ids.try_emplace(key, ids.size());
        block[q]         = it->second;
      }
      num_blocks = ids.size();
    }
    if (num_blocks == n) {
      return num_blocks;
    }

    // Predecessors per letter in compressed rows.
    std::vector<std::uint32_t> pred_start(k * (n + 1), 0);
    std::vector<std::uint32_t> pred(n * k);
    auto row = [n](std::size_t i, std::size_t q) { return i * (n + 1) + q; };
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t i = 0; i < k; ++i) {
        ++pred_start[row(i, t.succ[q * k + i]) + 1];
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t q = 0; q < n; ++q) {
        pred_start[row(i, q + 1)] += pred_start[row(i, q)];
      }
    }
    {
      std::vector<std::uint32_t> fill(pred_start);
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t i = 0; i < k; ++i) {
          auto r       = row(i, t.succ[q * k + i]);
          auto base    = i * n;
          pred[base + fill[r]++] = static_cast<std::uint32_t>(q);
        }
      }
    }

    // Blocks as contiguous ranges of `elems`.
    std::vector<std::uint32_t> elems(n), where(n);
    std::vector<std::uint32_t> first, last, marked;
    {
      std::vector<std::uint32_t> count(num_blocks, 0);
      for (std::size_t q = 0; q < n; ++q) {
        ++count[block[q]];
      }
      first.resize(num_blocks);
      std::uint32_t acc = 0;
      for (std::size_t b = 0; b < num_blocks; ++b) {
        first[b] = acc;
        acc += count[b];
      }
      last = first;
      for (std::size_t q = 0; q < n; ++q) {
        auto b          = block[q];
        where[q]        = last[b];
        elems[last[b]++] = static_cast<std::uint32_t>(q);
      }
      marked.assign(num_blocks, 0);
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> work;
    std::vector<bool> pending(num_blocks * k, false);
    for (std::uint32_t b = 0; b < num_blocks; ++b) {
      for (std::uint32_t i = 0; i < k; ++i) {
        work.emplace_back(b, i);
        pending[b * k + i] = true;
      }
    }

    std::vector<std::uint32_t> members, touched;
    while (!work.empty()) {
      auto [splitter, i] = work.back();
      work.pop_back();
      pending[splitter * k + i] = false;
      members.assign(elems.begin() + first[splitter],
                     elems.begin() + last[splitter]);
      touched.clear();
      for (auto q : members) {
        auto r = row(i, q);
        for (auto p = pred_start[r]; p < pred_start[r + 1]; ++p) {
          auto s = pred[i * n + p];
          auto b = block[s];
          // Move s to the marked prefix of its block.
          auto pos  = where[s];
          auto swap = first[b] + marked[b];
          if (pos < swap) {
            continue;  // already marked
          }
          if (marked[b] == 0) {
            touched.push_back(b);
          }
          std::swap(elems[pos], elems[swap]);
          where[elems[pos]]  = pos;
          where[elems[swap]] = swap;
          ++marked[b];
        }
      }
      for (auto b : touched) {
        auto const m    = marked[b];
        auto const size = last[b] - first[b];
        marked[b]       = 0;
        if (m == size) {
          continue;
        }
        // The marked prefix becomes a new block.
        auto const nb = static_cast<std::uint32_t>(first.size());
        first.push_back(first[b]);
        last.push_back(first[b] + m);
        marked.push_back(0);
        first[b] += m;
        for (auto p = first[nb]; p < last[nb]; ++p) {
          block[elems[p]] = nb;
        }
        pending.resize(pending.size() + k, false);
        for (std::uint32_t j = 0; j < k; ++j) {
          if (pending[b * k + j]) {
            work.emplace_back(nb, j);
            pending[nb * k + j] = true;
          } else {
            auto smaller = m <= size - m ? nb : b;
            work.emplace_back(smaller, j);
            pending[smaller * k + j] = true;
          }
        }
      }
    }
    return first.size();
  }

  // Minimal transducer, renumbered breadth-first from the root.
  ElementCode canonical_code(const Transducer& t) {
    auto const k = t.num_letters;
    auto const n = t.size;

    std::vector<std::uint32_t> block;
    auto const                 num_blocks = refine(t, block);

    // One representative state per block.
    std::vector<std::uint32_t> rep(num_blocks, kUndefined);
    for (std::size_t q = 0; q < n; ++q) {
      if (rep[block[q]] == kUndefined) {
        rep[block[q]] = static_cast<std::uint32_t>(q);
      }
    }
    std::vector<std::uint32_t> order(num_blocks, kUndefined);
    std::vector<std::uint32_t> queue{block[0]};
    order[block[0]] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto q = rep[queue[head]];
      for (std::size_t i = 0; i < k; ++i) {
        auto b = block[t.succ[q * k + i]];
        if (order[b] == kUndefined) {
          order[b] = static_cast<std::uint32_t>(queue.size());
          queue.push_back(b);
        }
      }
    }
    ElementCode code;
    code.reserve(1 + queue.size() * 2 * k);
    code.push_back(static_cast<std::uint32_t>(queue.size()));
    for (auto b : queue) {
      auto q = rep[b];
      for (std::size_t i = 0; i < k; ++i) {
        code.push_back(t.out[q * k + i]);
      }
      for (std::size_t i = 0; i < k; ++i) {
        code.push_back(order[block[t.succ[q * k + i]]]);
      }
    }
    return code;
  }

  inline std::uint32_t code_out(const ElementCode& c, std::size_t k,
                                std::uint32_t q, LetterId i) {
    return c[1 + q * 2 * k + i];
  }
  inline std::uint32_t code_succ(const ElementCode& c, std::size_t k,
                                 std::uint32_t q, LetterId i) {
    return c[1 + q * 2 * k + k + i];
  }
}  // namespace

ElementCode generator_code(const MealyMachine& m, StateId x) {
  auto const k = m.num_letters();
  Transducer t;
  t.num_letters = k;
  std::vector<std::uint32_t> index(m.num_states(), kUndefined);
  std::vector<StateId>       states{x};
  index[x] = 0;
  for (std::size_t head = 0; head < states.size(); ++head) {
    auto q = states[head];
    for (LetterId i = 0; i < k; ++i) {
      auto y = m.next(q, i);
      if (index[y] == kUndefined) {
        index[y] = static_cast<std::uint32_t>(states.size());
        states.push_back(y);
      }
      t.out.push_back(m.output(q, i));
      t.succ.push_back(index[y]);
    }
  }
  t.size = states.size();
  return canonical_code(t);
}

ElementCode compose_code(const MealyMachine& m, const ElementCode& code,
                         StateId x) {
  auto const k = m.num_letters();
  auto const a = m.num_states();
  Transducer t;
  t.num_letters = k;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::uint64_t>                       states;
  auto encode = [a](std::uint64_t q, std::uint64_t y) { return q * a + y; };
  states.push_back(encode(0, x));
  index.emplace(states.back(), 0);
  for (std::size_t head = 0; head < states.size(); ++head) {
    auto const q = static_cast<std::uint32_t>(states[head] / a);
    auto const y = static_cast<StateId>(states[head] % a);
    for (LetterId i = 0; i < k; ++i) {
      auto mid  = code_out(code, k, q, i);
      auto key  = encode(code_succ(code, k, q, i), m.next(y, mid));
      auto [it, fresh]
          = index.try_emplace(key, static_cast<std::uint32_t>(states.size()));
      if (fresh) {
        states.push_back(key);
      }
      t.out.push_back(m.output(y, mid));
      t.succ.push_back(it->second);
    }
  }
  t.size = states.size();
  return canonical_code(t);
}

Word apply_code(const ElementCode& code, std::size_t num_letters,
                std::span<const LetterId> s) {
  Word          out(s.begin(), s.end());
  std::uint32_t q = 0;
  for (auto& c : out) {
    if (c >= num_letters) {
      throw UnknownSymbol("letter id out of range");
    }
    auto o = code_out(code, num_letters, q, c);
    q      = code_succ(code, num_letters, q, c);
    c      = o;
  }
  return out;
}

}  // namespace mealy
