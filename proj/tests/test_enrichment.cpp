#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"

#include "mealy/enrichment.hpp"
#include "mealy/error.hpp"
#include "mealy/finiteness.hpp"

using namespace mealy;

namespace {
  constexpr LetterId kA = 0, kB = 1;
  constexpr StateId  s(int k) { return static_cast<StateId>(k - 1); }

  Word repeat(const Word& w, std::size_t n) {
    Word out;
    for (std::size_t k = 0; k < n; ++k) {
      out.insert(out.end(), w.begin(), w.end());
    }
    return out;
  }

  Word concat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  bool all_invertible_perms(const MealyMachine& m) {
    for (StateId x = 0; x < m.num_states(); ++x) {
      auto f = m.output_function(x);
      if (!oracle::is_bijection({f.begin(), f.end()})) {
        return false;
      }
    }
    return true;
  }

  bool is_identity(const MealyMachine& m, StateId x) {
    for (LetterId i = 0; i < m.num_letters(); ++i) {
      if (m.output(x, i) != i) {
        return false;
      }
    }
    return true;
  }

  // Reversible automata that admit a cycle with exit.
  Automaton random_reversible_with_exit(std::mt19937_64& rng,
                                        std::size_t states,
                                        std::size_t letters) {
    for (;;) {
      auto a = test::random_reversible(rng, states, letters);
      if (has_cycle_with_exit(a)) {
        return a;
      }
    }
  }
}  // namespace

TEST_CASE("construction tags") {
  for (auto c : {Construction::binary_external, Construction::no_return,
                 Construction::reversible, Construction::restricted_binary}) {
    CHECK(construction_from_string(to_string(c)) == c);
  }
  CHECK(to_string(Construction::no_return) == "Lemma3NoReturn");
  CHECK_FALSE(construction_from_string("Unknown"));
}

TEST_CASE("enrich_binary_external") {
  SUBCASE("adding machine automaton") {
    auto const a = test::adding_machine().automaton();
    auto const m = enrich_binary_external(a, Cycle{{0}, {1}},
                                          Exit{0, 0, 1, ExitKind::external});
    CHECK(is_identity(m, 0));
    CHECK(m.output(1, 0) == 1);
    CHECK(m.output(1, 1) == 0);
    CHECK(is_invertible(m));
    StateId const x[] = {0};
    for (std::size_t n = 0; n <= 20; ++n) {
      auto in  = concat(Word(n, 1), {0, 0});
      auto out = concat(Word(n, 1), {0, 1});
      CHECK(apply_rho(m, x, in) == out);
    }
  }
  SUBCASE("pruned six-state automaton") {
    auto const p = prune(test::six_state());
    auto const& a = p.automaton;  // ids 0..4 are states 1, 2, 3, 4, 6
    Cycle const c{{2, 0, 1}, {kB, kA, kA}};
    auto const m = enrich_binary_external(a, c, Exit{2, kA, 3,
                                                     ExitKind::external});
    for (StateId q = 0; q < 5; ++q) {
      CHECK(is_identity(m, q) == (q != 3));
    }
    StateId const x3[] = {2};
    Word const    baa{kB, kA, kA};
    for (std::size_t n = 0; n <= 20; ++n) {
      CHECK(apply_rho(m, x3, concat(repeat(baa, n), {kA, kA}))
            == concat(repeat(baa, n), {kA, kB}));
      CHECK(apply_rho(m, x3, concat(repeat(baa, n), {kA, kB}))
            == concat(repeat(baa, n), {kA, kA}));
    }
  }
  SUBCASE("preconditions") {
    auto tern = test::bare_automaton(2, 3);
    for (StateId x = 0; x < 2; ++x) {
      for (LetterId i = 0; i < 3; ++i) {
        tern.set_next(x, i, i == 0 ? x : 1);
      }
    }
    CHECK_THROWS_AS(enrich_binary_external(tern, Cycle{{0}, {0}},
                                           Exit{0, 1, 1, ExitKind::external}),
                    PreconditionViolated);
    auto const six = test::six_state();
    Cycle const c4{{s(1), s(2), s(3), s(4)}, {kA, kA, kA, kA}};
    CHECK_THROWS_AS(enrich_binary_external(
                        six, c4, Exit{s(3), kB, s(1), ExitKind::internal}),
                    PreconditionViolated);
  }
}

TEST_CASE("enrich_no_return") {
  auto const a = test::adding_machine().automaton();
  auto const m = enrich_no_return(a, Cycle{{0}, {1}},
                                  Exit{0, 0, 1, ExitKind::external});
  CHECK(m == test::adding_machine());

  StateId const x[] = {0};
  for (std::size_t n = 1; n <= 16; ++n) {
    Word const ones(n, 1);
    CHECK(orbit_size(m, x, ones, 1u << 20) == (std::uint64_t{1} << n));
  }

  SUBCASE("exit whose target returns to the cycle") {
    auto const six = test::six_state();
    Cycle const c{{s(1), s(2), s(3)}, {kA, kA, kB}};
    CHECK_THROWS_AS(
        enrich_no_return(six, c, Exit{s(3), kA, s(4), ExitKind::external}),
        PreconditionViolated);
  }

  SUBCASE("orbits of (j t)^n double on random automata") {
    std::mt19937_64 rng(53);
    int             tested = 0;
    for (int t = 0; t < 400 && tested < 40; ++t) {
      auto r = test::random_automaton(rng, 3 + t % 4, 2 + t % 2);
      auto pr = prune(r).automaton;
      auto w  = find_no_return_exit(pr);
      if (!w) {
        continue;
      }
      auto const m2   = enrich_no_return(pr, w->cycle, w->exit);
      CHECK(all_invertible_perms(m2));
      auto const pos  = *w->cycle.position(w->exit.from);
      auto const lab  = label_from(w->cycle, pos);
      StateId const g[] = {w->exit.from};
      for (std::size_t n = 1; n <= 10; ++n) {
        CHECK(orbit_size(m2, g, repeat(lab, n), 1u << 20)
              == (std::uint64_t{1} << n));
      }
      ++tested;
    }
    CHECK(tested == 40);
  }
}

TEST_CASE("find_merging_pair and enrich_reversible") {
  auto const pruned = prune(test::six_state()).automaton;
  auto const pair   = find_merging_pair(pruned);
  REQUIRE(pair);
  // Pruned ids: 2 is state 3, 3 is state 4.
  CHECK(pair->x == 2);
  CHECK(pair->x_letter == kA);
  CHECK(pair->y == 3);
  CHECK(pair->y_letter == kB);
  CHECK(pair->z == 3);

  auto const m = enrich_reversible(pruned);
  for (StateId q = 0; q < 5; ++q) {
    CHECK(is_identity(m, q) == (q != 3));
  }
  CHECK(m.output(3, kA) == kB);
  CHECK(is_invertible(m));
  CHECK(is_reversible(m));
  CHECK_FALSE(is_bireversible(m));

  SUBCASE("degenerate automaton has no merging pair") {
    Automaton sw({"p", "q"}, {"0", "1"});
    sw.set_next(0, 0, 1);
    sw.set_next(0, 1, 1);
    sw.set_next(1, 0, 0);
    sw.set_next(1, 1, 0);
    CHECK_FALSE(find_merging_pair(sw));
    CHECK_THROWS_AS(enrich_reversible(sw), NoSuchTriple);
  }
  SUBCASE("non-reversible input") {
    CHECK_THROWS_AS(enrich_reversible(test::six_state()), PreconditionViolated);
  }
  SUBCASE("random reversible automata with a cycle with exit") {
    std::mt19937_64 rng(59);
    for (int t = 0; t < 100; ++t) {
      auto r  = random_reversible_with_exit(rng, 2 + t % 5, 2 + t % 2);
      auto m2 = enrich_reversible(r);
      CHECK(is_invertible(m2));
      CHECK(is_reversible(m2));
      CHECK_FALSE(is_bireversible(m2));
    }
  }
}

TEST_CASE("find_i_path_cycle") {
  SUBCASE("adding machine automaton") {
    auto r = find_i_path_cycle(test::adding_machine().automaton(), 0, 0);
    CHECK(r.y == 1);
    CHECK(r.cycle == Cycle{{1}, {0}});
    CHECK(r.n == 1);
    CHECK(r.x_prime == 0);
  }
  SUBCASE("two-state example") {
    auto r = find_i_path_cycle(test::restricted_example(), 1, 0);
    CHECK(r.y == 0);
    CHECK(r.cycle == Cycle{{0}, {0}});
    CHECK(r.n == 1);
    CHECK(r.x_prime == 1);
  }
  SUBCASE("incoming i-transition") {
    CHECK_THROWS_AS(find_i_path_cycle(test::restricted_example(), 0, 0),
                    PreconditionViolated);
  }
  SUBCASE("longer tails") {
    // q0 -a-> q1 -a-> q2 -a-> q3 -a-> q2
    auto a = test::bare_automaton(4, 2);
    a.set_next(0, 0, 1);
    a.set_next(1, 0, 2);
    a.set_next(2, 0, 3);
    a.set_next(3, 0, 2);
    for (StateId q = 0; q < 4; ++q) {
      a.set_next(q, 1, 0);
    }
    auto r = find_i_path_cycle(a, 0, 0);
    CHECK(r.y == 2);
    CHECK(r.n == 2);
    CHECK(r.x_prime == 1);
    CHECK(r.cycle == Cycle{{2, 3}, {0, 0}});
    CHECK_FALSE(r.cycle.contains(r.x_prime));
  }
}

TEST_CASE("restrict_alphabet") {
  auto const six = test::six_state();
  CHECK(restrict_alphabet(six, kA, kB) == six);
  CHECK(restrict_alphabet(six, kB, kA) == six);
  CHECK_THROWS_AS(restrict_alphabet(six, kA, kA), PreconditionViolated);

  std::mt19937_64 rng(61);
  for (int t = 0; t < 50; ++t) {
    auto a = test::random_automaton(rng, 4, 3);
    auto b = restrict_alphabet(a, 2, 0);
    CHECK(b.letter_names() == std::vector<std::string>{"a", "c"});
    for (StateId x = 0; x < 4; ++x) {
      CHECK(b.next(x, 0) == a.next(x, 0));
      CHECK(b.next(x, 1) == a.next(x, 2));
    }
    // Cycles over {a, c} survive, with letters re-indexed.
    for (StateId x = 0; x < 4; ++x) {
      auto c = cycle_through(b, x, 1);
      if (c) {
        Cycle lifted = *c;
        for (auto& l : lifted.letters) {
          l = l == 0 ? 0 : 2;
        }
        CHECK_NOTHROW(check_cycle(a, lifted));
      }
    }
  }
}

TEST_CASE("complete_permutations") {
  std::vector<LetterId> const letters{0, 2};
  Enrichment const partial{{LetterMap{1, 0}, LetterMap{0, 1}},
                           Construction::restricted_binary};
  auto const full = complete_permutations(partial, letters, 3);
  CHECK(full.perms[0] == LetterMap{2, 1, 0});
  CHECK(full.perms[1] == LetterMap{0, 1, 2});
  CHECK(full.certificate == Construction::restricted_binary);
  // Restricting back recovers the partial maps.
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t k = 0; k < 2; ++k) {
      auto image = full.perms[x][letters[k]];
      CHECK(image == letters[partial.perms[x][k]]);
    }
  }
  CHECK_THROWS_AS(complete_permutations({{LetterMap{0, 0}}, Construction::reversible},
                                        letters, 3),
                  PreconditionViolated);
}

TEST_CASE("enrich") {
  SUBCASE("adding machine automaton uses the no-return construction") {
    auto r = enrich(test::adding_machine().automaton());
    CHECK(r.certificate == Construction::no_return);
    CHECK(r.machine == test::adding_machine());
    CHECK(r.cycle == Cycle{{0}, {1}});
    CHECK(r.exit == Exit{0, 0, 1, ExitKind::external});
  }
  SUBCASE("six-state automaton uses the merging construction") {
    auto const a = test::six_state();
    auto r       = enrich(a);
    CHECK(r.pruning.removed == std::vector<StateId>{s(5)});
    CHECK(r.certificate == Construction::reversible);
    REQUIRE(r.merging);
    CHECK(r.merging->x == s(3));
    CHECK(r.merging->y == s(4));
    CHECK(r.merging->z == s(4));
    for (StateId q = 0; q < 6; ++q) {
      CHECK(is_identity(r.machine, q) == (q != s(4)));
    }
    CHECK(is_invertible(r.machine));
    CHECK(f4_check(r.pruned).has_value());
  }
  SUBCASE("two-state automaton uses the restricted construction") {
    auto r = enrich(test::restricted_example());
    CHECK(r.certificate == Construction::restricted_binary);
    REQUIRE(r.i_path);
    CHECK(r.i_path->x == 1);
    CHECK(r.i_path->i == 0);
    CHECK(r.cycle == Cycle{{0}, {0}});
    CHECK(r.exit == Exit{0, 1, 1, ExitKind::external});
    CHECK(is_identity(r.machine, 0));
    CHECK(r.machine.output(1, 0) == 1);
    CHECK(r.machine.output(1, 1) == 0);
  }
  SUBCASE("no cycle with exit") {
    CHECK_THROWS_AS(enrich(test::identity_machine(2, 2).automaton()),
                    NoExitCycle);
  }
  SUBCASE("deterministic and invertible on random automata") {
    std::mt19937_64 rng(67);
    int             branches[4] = {0, 0, 0, 0};
    for (int t = 0; t < 300; ++t) {
      auto a = t % 3 == 0 ? test::random_reversible(rng, 2 + t % 5, 2 + t % 2)
                          : test::random_automaton(rng, 2 + t % 6, 2 + t % 3);
      if (!has_cycle_with_exit(a)) {
        CHECK_THROWS_AS(enrich(a), NoExitCycle);
        continue;
      }
      auto r1 = enrich(a);
      auto r2 = enrich(a);
      CHECK(r1.machine == r2.machine);
      CHECK(r1.certificate == r2.certificate);
      CHECK(all_invertible_perms(r1.machine));
      CHECK(r1.machine.automaton() == a);
      for (auto q : r1.pruning.removed) {
        CHECK(is_identity(r1.machine, q));
      }
      ++branches[static_cast<int>(r1.certificate)];
    }
    CHECK(branches[static_cast<int>(Construction::no_return)] > 0);
    CHECK(branches[static_cast<int>(Construction::reversible)] > 0);
  }
}

TEST_CASE("restricted construction is coherent with the binary one") {
  std::mt19937_64 rng(71);
  int             tested = 0;
  for (int t = 0; t < 5000 && tested < 30; ++t) {
    // Every transition on a cycle and not reversible: strongly connected,
    // non-permutation automata.
    auto a = test::random_automaton(rng, 2 + t % 4, 2 + t % 2);
    if (!has_cycle_with_exit(a) || strongly_connected(a).count != 1
        || is_reversible(a)) {
      continue;
    }
    auto r = enrich(a);
    REQUIRE(r.certificate == Construction::restricted_binary);
    auto const& p  = *r.i_path;
    auto const b   = restrict_alphabet(a, r.restricted_letters[0],
                                       r.restricted_letters[1]);
    auto local     = [&](LetterId l) -> LetterId {
      return l == r.restricted_letters[0] ? 0 : 1;
    };
    Cycle c = p.cycle;
    for (auto& l : c.letters) {
      l = local(l);
    }
    Exit e   = *r.exit;
    e.letter = local(e.letter);
    auto expected = enrich_binary_external(b, c, e);
    CHECK(restrict_machine(r.machine, r.restricted_letters) == expected);
    CHECK(!p.cycle.contains(p.x_prime));
    CHECK(a.next(p.x_prime, p.i) == p.y);
    CHECK(r.exit->letter != p.i);
    ++tested;
  }
  CHECK(tested == 30);
}
