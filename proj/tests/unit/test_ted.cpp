#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "pdaed/errors.hpp"
#include "pdaed/oracle.hpp"
#include "pdaed/ted.hpp"

using namespace pdaed;
using namespace fixtures;

namespace {

constexpr auto H = ImpactVector::kHash;

void check_counterexample(const Pda& pda, const Nfa& nfa, std::uint64_t t, const TedResult& r) {
  if (r.within) {
    CHECK_FALSE(r.counterexample);
    return;
  }
  REQUIRE(r.counterexample);
  CHECK(pda_accepts(pda, *r.counterexample));
  CHECK(word_to_nfa_distance(*r.counterexample, nfa) > Distance(t));
}

}  // namespace

TEST_CASE("impact vectors") {
  const Nfa nfa = nfa_a_star_b();
  const EditCostTable table(nfa);
  const auto l0 = impact_initial(nfa, table, 2);
  CHECK(l0.values == std::vector<std::uint64_t>{0, 1});
  const auto lb = impact_step(l0, U'b', table, 2);
  CHECK(lb.values == std::vector<std::uint64_t>{1, 0});
  CHECK(impact_initial(nfa, table, 0).values == std::vector<std::uint64_t>{0, H});
  CHECK(l0.to_string() == "(0,1)");

  const Nfa unreachable({U'a'}, 2, {0}, {0}, {{0, U'a', 0}});
  CHECK(impact_initial(unreachable, EditCostTable(unreachable), 5).values == std::vector<std::uint64_t>{0, H});

  const ImpactVector all_hash{{H, H}};
  CHECK(impact_step(all_hash, U'a', table, 3) == all_hash);

  const Nfa single({U'a'}, 1, {0}, {0}, {});
  CHECK(impact_step(ImpactVector{{2}}, U'a', EditCostTable(single), 2).values == std::vector<std::uint64_t>{H});
}

TEST_CASE("threshold decisions") {
  SUBCASE("a^n b^n within a*b*") {
    const auto r = ted_decide(pda_anbn(), nfa_a_star_b_star(), 0);
    CHECK(r.within);
    CHECK_FALSE(r.counterexample);
  }
  SUBCASE("universal language against a*") {
    const Pda sigma = nfa_to_pda(nfa_universal());
    const Nfa a_star = nfa_a_star({U'a', U'b'});
    for (std::uint64_t t : {0, 1, 2, 5}) {
      const auto r = ted_decide(sigma, a_star, t);
      CHECK_FALSE(r.within);
      REQUIRE(r.counterexample);
      CHECK(*r.counterexample == Word(t + 1, U'b'));
    }
  }
  SUBCASE("empty word within a*") {
    const Pda eps = nfa_to_pda(nfa_epsilon());
    CHECK(ted_decide(eps, nfa_a_star(), 0).within);
  }
  SUBCASE("empty target") {
    const auto r = ted_decide(pda_anbn(), nfa_empty({U'a', U'b'}), 7);
    CHECK_FALSE(r.within);
    CHECK(*r.counterexample == U"");
  }
  SUBCASE("large thresholds are exact") {
    const Natural huge = Natural(1) << 200;
    CHECK(ted_decide(pda_anbn(), nfa_universal(), huge).within);
    CHECK_FALSE(ted_decide(pda_anbn(), nfa_epsilon({U'a', U'b'}), 1).within);
    CHECK(capped_threshold(huge) == kThresholdCap);
  }
  SUBCASE("budget") {
    TedOptions tight;
    tight.max_states = 3;
    CHECK_THROWS_AS(ted_decide(pda_anbn(), nfa_a_star(), 50, tight), BudgetExceeded);
  }
}

TEST_CASE("inclusion") {
  CHECK(inclusion(pda_anbn(), nfa_a_star_b_star()).within);
  const Pda ab_star = nfa_to_pda(nfa_a_star_b_star());
  const auto r = inclusion(ab_star, nfa_a_star({U'a', U'b'}));
  CHECK_FALSE(r.within);
  CHECK(*r.counterexample == U"b");
  const Pda stuck({U'a'}, {U'A'}, 2, {0}, {1}, {{0, U'a', U'A', 1, U""}});
  CHECK(inclusion(stuck, nfa_empty()).within);
}

TEST_CASE("property: lazy search agrees with the materialized impact automaton") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 60; ++i) {
    const Pda pda = random_pda(rng, 4, 2);
    const Nfa nfa = random_nfa(rng, 3, 2);
    for (std::uint64_t t : {0, 1, 2, 3}) {
      const auto lazy = ted_decide(pda, nfa, t);
      const auto built = build_impact_automaton(pda, nfa, t);
      const auto empty = pda_emptiness(built.pda);
      CHECK(lazy.within == empty.empty);
      CHECK(lazy.explored_states <= built.pda.num_states());
      check_counterexample(pda, nfa, t, lazy);
      if (!empty.empty) {
        CHECK(pda_accepts(pda, *empty.witness));
        CHECK(word_to_nfa_distance(*empty.witness, nfa) > Distance(t));
      }
    }
  }
}

TEST_CASE("property: impact runs carry capped distance vectors") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 25; ++i) {
    const Pda pda = random_pda(rng, 3, 2);
    const Nfa nfa = random_nfa(rng, 3, 2);
    const EditCostTable table(nfa);
    for (std::uint64_t t : {0, 2}) {
      const auto built = build_impact_automaton(pda, nfa, t);
      // Follow control-graph runs on every word and compare vectors with the DP.
      for (const Word& w : all_words(pda.alphabet(), 5)) {
        StateSet current = built.pda.initials();
        for (Letter a : w) {
          StateSet next;
          for (State s : current) {
            for (const auto& tr : built.pda.outgoing(s)) {
              if (tr.letter == a) next.insert(tr.to);
            }
          }
          current = std::move(next);
        }
        const auto d = distances_after(w, table);
        for (State s : current) {
          for (State q = 0; q < nfa.num_states(); ++q) {
            const auto v = built.vectors[s].values[q];
            if (d[q].is_infinite() || d[q].value() > t) {
              CHECK(v == H);
            } else {
              CHECK(v == d[q].value());
            }
          }
        }
      }
    }
  }
}

TEST_CASE("property: monotone thresholds, valid counterexamples, bounded state counts") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 60; ++i) {
    const Pda pda = random_pda(rng, 4, 2);
    const Nfa nfa = random_nfa(rng, 3, 2);
    bool held = false;
    for (std::uint64_t t = 0; t <= 5; ++t) {
      const auto r = ted_decide(pda, nfa, t);
      if (held) CHECK(r.within);
      held = held || r.within;
      check_counterexample(pda, nfa, t, r);
      CHECK(Natural(r.explored_states) <= impact_state_bound(pda, nfa, t));
    }
  }
}

TEST_CASE("property: oracle violations are never missed") {
  std::mt19937_64 rng(54);
  OracleBudget budget;
  budget.source_length = 6;
  for (int i = 0; i < 40; ++i) {
    const Pda pda = random_pda(rng, 4, 2);
    const Nfa nfa = random_nfa(rng, 3, 2);
    for (std::uint64_t t : {0, 1, 2, 3}) {
      const auto oracle = oracle_ted(pda, nfa, t, budget);
      if (oracle.violation_found) CHECK_FALSE(ted_decide(pda, nfa, t).within);
    }
  }
}

TEST_CASE("property: inclusion matches the determinization product") {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 60; ++i) {
    const Pda pda = random_pda(rng, 4, 2);
    const Nfa nfa = random_nfa(rng, 3, 2);
    CHECK(inclusion(pda, nfa).within == !pda_nfa_inclusion_counterexample(pda, nfa).has_value());
  }
}
