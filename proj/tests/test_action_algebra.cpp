#include <random>

#include "doctest.h"
#include "easee/action_algebra.hpp"
#include "easee/error.hpp"
#include "oracles.hpp"

using namespace easee;

namespace {

constexpr Action a1 = 0;
constexpr Action a2 = 1;

EquivalenceSet omega_of(std::vector<SequencePair> pairs) { return EquivalenceSet(pairs); }

ActionSequence random_sequence(std::mt19937_64& rng, std::size_t alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> act(0, static_cast<int>(alphabet) - 1);
  ActionSequence s;
  for (std::size_t n = len(rng); n > 0; --n) s.push_back(static_cast<Action>(act(rng)));
  return s;
}

}  // namespace

TEST_CASE("concat") {
  CHECK(concat({}, {}) == ActionSequence{});
  CHECK(concat({a1}, {a2}) == ActionSequence{a1, a2});
  CHECK(concat({a1, a2}, {a1}) == ActionSequence{a1, a2, a1});
}

TEST_CASE("action set validation") {
  CHECK_THROWS_AS(ActionSet(std::vector<std::string>{}), ValidationError);
  CHECK_THROWS_AS(ActionSet({"a", "a"}), ValidationError);
  CHECK_THROWS_AS(ActionSet({"a", ""}), ValidationError);
  CHECK_THROWS_AS(ActionSet({"-"}), ValidationError);
  ActionSet s({"F", "L", "R"});
  CHECK(s.size() == 3);
  CHECK(s.index_of("R") == 2);
  CHECK_FALSE(s.find("X").has_value());
}

TEST_CASE("equivalence set dedups unordered pairs") {
  EquivalenceSet omega;
  CHECK(omega.add({a1, a2}, {a2, a1}));
  CHECK_FALSE(omega.add({a2, a1}, {a1, a2}));
  CHECK(omega.size() == 1);
  CHECK_THROWS_AS(omega.add({a1}, {a1}), ValidationError);
}

TEST_CASE("one_step_rewrites examples") {
  const auto door = omega_of({{{a1, a1}, {}}});
  CHECK(one_step_rewrites({a1, a1, a1}, door) == std::set<ActionSequence>{{a1, a1, a1}, {a1}});
  const auto swap = omega_of({{{a2, a1}, {a1, a2}}});
  CHECK(one_step_rewrites({a2, a1}, swap) == std::set<ActionSequence>{{a2, a1}, {a1, a2}});
  CHECK(one_step_rewrites({a2}, door) == std::set<ActionSequence>{{a2}});
  // Raising the length cap lets the empty side be replaced by a1 a1.
  CHECK(one_step_rewrites({a2}, door, 3) ==
        std::set<ActionSequence>{{a2}, {a1, a1, a2}, {a2, a1, a1}});
}

TEST_CASE("one_step_rewrites differ from the input in one window") {
  std::mt19937_64 rng(7);
  const auto omega = omega_of({{{a1, a1}, {}}, {{a2, a1}, {a1, a2}}, {{a2, a2, a2}, {a1}}});
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_sequence(rng, 2, 7);
    const auto out = one_step_rewrites(s, omega, s.size() + 3);
    CHECK(out.count(s) == 1);
    for (const auto& w : out) {
      std::size_t pre = 0;
      while (pre < s.size() && pre < w.size() && s[pre] == w[pre]) ++pre;
      std::size_t suf = 0;
      while (suf < s.size() - pre && suf < w.size() - pre &&
             s[s.size() - 1 - suf] == w[w.size() - 1 - suf])
        ++suf;
      const auto ws = s.substr(pre, s.size() - pre - suf);
      const auto ww = w.substr(pre, w.size() - pre - suf);
      // The changed window must sit inside one occurrence of a rule side.
      bool explained = ws == ww;
      for (const auto& [v, x] : omega.pairs())
        for (const auto& [l, r] : {std::pair{v, x}, std::pair{x, v}})
          for (std::size_t i = 0; i + l.size() <= s.size() && !explained; ++i)
            if (s.substr(i, l.size()) == l &&
                concat(concat(s.substr(0, i), r), s.substr(i + l.size())) == w)
              explained = true;
      CHECK(explained);
    }
  }
}

TEST_CASE("closure examples") {
  const auto door = omega_of({{{a1, a1}, {}}});
  CHECK(closure({a1, a1, a1}, door, {3, 1000}) == std::set<ActionSequence>{{a1, a1, a1}, {a1}});
  CHECK(closure({}, omega_of({{{a2, a1}, {a1, a2}}}), {4, 10}) == std::set<ActionSequence>{{}});

  // Fixpoint pinned against the independent enumeration oracle: every word
  // of length <= 3 in the same component as a2 a1 a1.
  const auto both = omega_of({{{a1, a1}, {}}, {{a2, a1}, {a1, a2}}});
  const auto got = closure({a2, a1, a1}, both, {3, 1000});
  oracle::Partition part(2, oracle::pairs_of(both), 3);
  std::set<ActionSequence> expected;
  for (std::size_t len = 0; len <= 3; ++len) {
    for (std::size_t bits = 0; bits < (1u << len); ++bits) {
      ActionSequence s;
      for (std::size_t k = 0; k < len; ++k) s.push_back(static_cast<Action>((bits >> k) & 1));
      if (part.same(oracle::word_of(s), {1, 0, 0})) expected.insert(s);
    }
  }
  CHECK(got == expected);
  CHECK(got.count({a2}) == 1);
  CHECK(got.count({a1, a2, a1}) == 1);
  CHECK(got.count({a1, a1, a2}) == 1);
}

TEST_CASE("closure budget and preconditions") {
  const auto grow = omega_of({{{a1}, {a1, a1}}});
  CHECK_THROWS_AS(closure({a1}, grow, {50, 10}), BudgetExceeded);
  CHECK_THROWS_AS(closure({a1, a1}, grow, {1, 10}), ValidationError);
  CHECK_THROWS_AS(closure({a1}, grow, {2, 0}), ValidationError);
}

TEST_CASE("equivalent examples") {
  CHECK(equivalent({a2, a1}, {a1, a2}, omega_of({{{a2, a1}, {a1, a2}}})));
  CHECK_FALSE(equivalent({a1}, {a2}, EquivalenceSet{}));
  CHECK(equivalent({a1, a1, a1, a1}, {}, omega_of({{{a1, a1}, {}}})));
}

TEST_CASE("equivalent is an equivalence relation on sampled triples") {
  std::mt19937_64 rng(11);
  const auto omega = omega_of({{{a1, a1}, {}}, {{a2, a1}, {a1, a2}}});
  const ClosureBudget budget{8, 100000};
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_sequence(rng, 2, 5);
    const auto t = random_sequence(rng, 2, 5);
    const auto u = random_sequence(rng, 2, 5);
    CHECK(equivalent(s, s, omega, budget));
    CHECK(equivalent(s, t, omega, budget) == equivalent(t, s, omega, budget));
    if (equivalent(s, t, omega, budget) && equivalent(t, u, omega, budget))
      CHECK(equivalent(s, u, omega, budget));
  }
}

TEST_CASE("concatenation of equivalent sequences stays equivalent") {
  std::mt19937_64 rng(13);
  const auto omega = omega_of({{{a1, a1}, {}}, {{a2, a1}, {a1, a2}}});
  int exercised = 0;
  for (int trial = 0; trial < 2000 && exercised < 100; ++trial) {
    const auto w1 = random_sequence(rng, 2, 4);
    const auto w2 = random_sequence(rng, 2, 4);
    const auto w3 = random_sequence(rng, 2, 4);
    const auto w4 = random_sequence(rng, 2, 4);
    if (!equivalent(w1, w2, omega, {8, 100000}) || !equivalent(w3, w4, omega, {8, 100000})) continue;
    ++exercised;
    const std::size_t len = std::max(w1.size() + w3.size(), w2.size() + w4.size()) + omega.longest_side();
    CHECK(equivalent(concat(w1, w3), concat(w2, w4), omega, {len, 100000}));
  }
  CHECK(exercised >= 20);
}

TEST_CASE("closure is deterministic") {
  const auto omega = omega_of({{{a1, a1}, {}}, {{a2, a1}, {a1, a2}}});
  const auto first = closure({a2, a1, a2, a1}, omega, {6, 10000});
  for (int i = 0; i < 3; ++i) CHECK(closure({a2, a1, a2, a1}, omega, {6, 10000}) == first);
}

TEST_CASE("canonical representative is shortlex minimum") {
  const auto omega = omega_of({{{a2, a1}, {a1, a2}}});
  CHECK(canonical_representative({a2, a1}, omega, {2, 100}) == ActionSequence{a1, a2});
  CHECK(shortlex_less({a2}, {a1, a1}));
  CHECK(shortlex_less({a1, a2}, {a2, a1}));
}

TEST_CASE("DSL parse and print") {
  const auto prior = parse_prior("# rotation\nactions: F L R\nequiv: R L ~ -\nequiv: L R ~ -  # inverse\n"
                                 "equiv: R R ~ L L\n");
  CHECK(prior.actions.names() == std::vector<std::string>{"F", "L", "R"});
  CHECK(prior.omega.size() == 3);
  CHECK(equivalent({2, 2}, {1, 1}, prior.omega));
  const auto again = parse_prior(to_dsl(prior.actions, prior.omega));
  CHECK(again.omega.pairs() == prior.omega.pairs());
  CHECK(to_dsl(again.actions, again.omega) == to_dsl(prior.actions, prior.omega));

  CHECK_THROWS_AS(parse_prior("equiv: a ~ b\n"), ParseError);
  CHECK_THROWS_AS(parse_prior("actions: a b\nequiv: a ~ c\n"), ParseError);
  CHECK_THROWS_AS(parse_prior("actions: a b\nequiv: a b\n"), ParseError);
  CHECK_THROWS_AS(parse_prior("actions: a b\nactions: c\n"), ParseError);
  CHECK_THROWS_AS(parse_prior("actions: a b\nfoo: a\n"), ParseError);
  try {
    parse_prior("actions: a b\n\nequiv: a ~ a\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}
