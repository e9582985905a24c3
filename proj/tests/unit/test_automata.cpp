#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "pdaed/errors.hpp"
#include "reference.hpp"

using namespace pdaed;
using namespace fixtures;

TEST_CASE("reachable states of a*b") {
  const Nfa nfa = nfa_a_star_b();
  CHECK(nfa_reachable_states(nfa, U"ab") == StateSet{1});
  CHECK(nfa_reachable_states(nfa, U"") == StateSet{0});
  CHECK(nfa_reachable_states(nfa, U"ba").empty());
  CHECK_THROWS_AS(nfa_reachable_states(nfa, U"c"), ValidationError);
}

TEST_CASE("automaton validation") {
  CHECK_THROWS_AS(Nfa({U'a'}, 1, {0}, {0}, {{0, U'b', 0}}), ValidationError);
  CHECK_THROWS_AS(Nfa({U'a'}, 1, {0}, {1}, {}), ValidationError);
  CHECK_THROWS_AS(Nfa({U'a'}, 1, {0}, {0}, {{0, U'a', 2}}), ValidationError);
  CHECK_THROWS_AS(Pda({U'a'}, {kBottom}, 1, {0}, {0}, {}), ValidationError);
  CHECK_THROWS_AS(Pda({U'a'}, {U'A'}, 1, {0}, {0}, {{0, U'a', kBottom, 0, U"B"}}), ValidationError);
  CHECK_THROWS_AS(Pda({U'a'}, {U'A'}, 1, {0}, {0}, {{0, U'a', kBottom, 0, U"A⊥"}}), ValidationError);
  CHECK_THROWS_AS(Dfa(Nfa({U'a'}, 2, {0}, {1}, {{0, U'a', 0}, {0, U'a', 1}})), ValidationError);
}

TEST_CASE("pda acceptance for a^n b^n") {
  const Pda pda = pda_anbn();
  CHECK(pda_accepts(pda, U"aabb"));
  CHECK_FALSE(pda_accepts(pda, U"aab"));
  CHECK(pda_accepts(pda, U""));
  CHECK_FALSE(pda_accepts(pda, U"ba"));
  CHECK_FALSE(pda_accepts(pda, U"abab"));
  for (const Word& w : all_words({U'a', U'b'}, 8)) {
    const auto half = w.size() / 2;
    const bool expected = w.size() % 2 == 0 && w == Word(half, U'a') + Word(half, U'b');
    CHECK(pda_accepts(pda, w) == expected);
  }
}

TEST_CASE("prefix closure") {
  SUBCASE("a*b") {
    const Nfa closed = prefix_closure(nfa_a_star_b());
    CHECK(is_safety(closed));
    for (const Word& w : all_words({U'a', U'b'}, 6)) {
      const bool expected = w.find(U'b') == Word::npos || w.find(U'b') == w.size() - 1;
      CHECK(nfa_accepts(closed, w) == expected);
    }
  }
  SUBCASE("universal automaton is a fixed point") {
    const Nfa closed = prefix_closure(nfa_universal());
    CHECK(closed.num_states() == 1);
    CHECK(closed.transitions().size() == 2);
  }
  SUBCASE("trap state removed") {
    const Nfa with_trap({U'a', U'b'}, 3, {0}, {1}, {{0, U'a', 1}, {0, U'b', 2}, {2, U'a', 2}});
    CHECK(prefix_closure(with_trap).num_states() == 2);
  }
  SUBCASE("empty language") { CHECK(prefix_closure(nfa_empty()).num_states() == 0); }
}

TEST_CASE("emptiness") {
  const auto anbn = pda_emptiness(pda_anbn());
  CHECK_FALSE(anbn.empty);
  REQUIRE(anbn.witness);
  CHECK(*anbn.witness == U"");

  const Pda stuck({U'a'}, {U'A'}, 2, {0}, {1}, {{0, U'a', U'A', 1, U""}});
  CHECK(pda_emptiness(stuck).empty);

  const auto hash = pda_emptiness(pda_an_hash_bn());
  REQUIRE(hash.witness);
  CHECK(*hash.witness == U"#");
}

TEST_CASE("determinism") {
  CHECK(is_deterministic(nfa_a_star_b()));
  CHECK_FALSE(is_deterministic(Nfa({U'a'}, 2, {0}, {1}, {{0, U'a', 0}, {0, U'a', 1}})));
  CHECK(is_deterministic(pda_anbn()));
  CHECK_FALSE(is_deterministic(Pda({U'a'}, {U'A'}, 1, {0}, {0}, {{0, U'a', kBottom, 0, U""}, {0, U'a', kBottom, 0, U"A"}})));
}

TEST_CASE("inclusion helpers") {
  CHECK_FALSE(nfa_inclusion_counterexample(nfa_a_star(), nfa_universal()));
  const auto cex = nfa_inclusion_counterexample(nfa_universal(), nfa_a_star({U'a', U'b'}));
  REQUIRE(cex);
  CHECK(*cex == U"b");
  CHECK(nfa_is_universal(nfa_universal(), {U'a', U'b'}));
  CHECK_FALSE(nfa_is_universal(nfa_a_star_b_star(), {U'a', U'b'}));
  CHECK_FALSE(pda_nfa_inclusion_counterexample(pda_anbn(), nfa_a_star_b_star()));
  const auto pda_cex = pda_nfa_inclusion_counterexample(pda_anbn(), nfa_a_star({U'a', U'b'}));
  REQUIRE(pda_cex);
  CHECK(*pda_cex == U"ab");
}

TEST_CASE("enumeration of accepted words") {
  std::vector<Word> seen;
  for_each_accepted_word(pda_anbn(), 6, [&](const Word& w) {
    seen.push_back(w);
    return true;
  });
  CHECK(seen == std::vector<Word>{U"", U"ab", U"aabb", U"aaabbb"});
}

TEST_CASE("property: reachable states agree with run enumeration") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const Nfa nfa = random_nfa(rng, 5, 2);
    for (const Word& w : all_words(nfa.alphabet(), 6)) {
      CHECK(nfa_accepts(nfa, w) == reference::nfa_run_accepts(nfa, w));
    }
  }
}

TEST_CASE("property: prefix closure is idempotent and contains the language") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 40; ++i) {
    const Nfa nfa = random_nfa(rng, 5, 2);
    const Nfa once = prefix_closure(nfa);
    const Nfa twice = prefix_closure(once);
    CHECK(once.num_states() <= nfa.num_states());
    for (const Word& w : all_words(nfa.alphabet(), 6)) {
      CHECK(nfa_accepts(once, w) == nfa_accepts(twice, w));
      if (nfa_accepts(nfa, w)) CHECK(nfa_accepts(once, w));
      // Prefix closure membership by brute force: some extension of length <= 6 is accepted.
      bool extendable = false;
      for (const Word& x : all_words(nfa.alphabet(), nfa.num_states())) {
        if (nfa_accepts(nfa, w + x)) {
          extendable = true;
          break;
        }
      }
      CHECK(nfa_accepts(once, w) == extendable);
    }
  }
}

TEST_CASE("property: emptiness witnesses are accepted and shortest") {
  std::mt19937_64 rng(13);
  int nonempty = 0;
  for (int i = 0; i < 150; ++i) {
    const Pda pda = random_pda(rng, 4, 2);
    const auto result = pda_emptiness(pda);
    std::optional<Word> first;
    for_each_accepted_word(pda, 7, [&](const Word& w) {
      first = w;
      return false;
    });
    if (result.empty) {
      CHECK_FALSE(first);
      continue;
    }
    ++nonempty;
    REQUIRE(result.witness);
    CHECK(pda_accepts(pda, *result.witness));
    if (first) CHECK(first->size() == result.witness->size());
  }
  CHECK(nonempty > 20);
}

TEST_CASE("property: determinization preserves the language") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 30; ++i) {
    const Nfa nfa = random_nfa(rng, 4, 2);
    const Dfa dfa = determinize(nfa, nfa.alphabet());
    CHECK(is_deterministic(dfa.nfa()));
    for (const Word& w : all_words(nfa.alphabet(), 6)) CHECK(nfa_accepts(dfa, w) == nfa_accepts(nfa, w));
  }
}
