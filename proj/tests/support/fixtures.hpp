#pragma once

// Small automata and grammars shared by the unit and acceptance suites, plus
// seeded random generators.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pdaed/automata.hpp"
#include "pdaed/grammar.hpp"

namespace fixtures {

using namespace pdaed;

inline Nfa nfa_a_star_b() {
  return Nfa({U'a', U'b'}, 2, {0}, {1}, {{0, U'a', 0}, {0, U'b', 1}});
}

inline Nfa nfa_a_star(Alphabet alphabet = {U'a'}) { return Nfa(std::move(alphabet), 1, {0}, {0}, {{0, U'a', 0}}); }

inline Nfa nfa_universal(Alphabet alphabet = {U'a', U'b'}) {
  std::vector<NfaTransition> ts;
  for (Letter c : alphabet) ts.push_back({0, c, 0});
  return Nfa(std::move(alphabet), 1, {0}, {0}, std::move(ts));
}

inline Nfa nfa_a_star_b_star() {
  return Nfa({U'a', U'b'}, 2, {0}, {0, 1}, {{0, U'a', 0}, {0, U'b', 1}, {1, U'b', 1}});
}

/// a* | b* with the two branches leaving a shared initial state.
inline Nfa nfa_a_star_or_b_star(Alphabet alphabet = {U'a', U'b'}) {
  return Nfa(std::move(alphabet), 3, {0}, {0, 1, 2}, {{0, U'a', 1}, {1, U'a', 1}, {0, U'b', 2}, {2, U'b', 2}});
}

/// Only the empty word.
inline Nfa nfa_epsilon(Alphabet alphabet = {U'a'}) { return Nfa(std::move(alphabet), 1, {0}, {0}, {}); }

inline Nfa nfa_empty(Alphabet alphabet = {U'a'}) { return Nfa(std::move(alphabet), 1, {0}, {}, {}); }

/// Finite word list as an NFA (a trie).
inline Nfa nfa_words(Alphabet alphabet, const std::vector<Word>& words) {
  std::vector<NfaTransition> ts;
  StateSet finals;
  State next = 1;
  for (const auto& w : words) {
    State at = 0;
    for (Letter c : w) {
      ts.push_back({at, c, next});
      at = next++;
    }
    finals.insert(at);
  }
  return Nfa(std::move(alphabet), next, {0}, std::move(finals), std::move(ts));
}

/// {a^n b^n : n >= 0}.
inline Pda pda_anbn() {
  return Pda({U'a', U'b'}, {U'A'}, 2, {0}, {0, 1},
             {{0, U'a', kBottom, 0, U"A"}, {0, U'a', U'A', 0, U"AA"}, {0, U'b', U'A', 1, U""},
              {1, U'b', U'A', 1, U""}});
}

/// {a^n # b^n : n >= 0}.
inline Pda pda_an_hash_bn() {
  return Pda({U'a', U'b', U'#'}, {U'A'}, 2, {0}, {1},
             {{0, U'a', kBottom, 0, U"A"}, {0, U'a', U'A', 0, U"AA"}, {0, U'#', kBottom, 1, U""},
              {0, U'#', U'A', 1, U"A"}, {1, U'b', U'A', 1, U""}});
}

/// {a^n # b^n} as a general grammar S -> a S b | #.
inline Grammar grammar_an_hash_bn() {
  Grammar g;
  g.alphabet = {U'a', U'b', U'#'};
  g.nonterminals = {"S"};
  g.productions = {{0, {GrammarSymbol::letter(U'a'), GrammarSymbol::variable(0), GrammarSymbol::letter(U'b')}},
                   {0, {GrammarSymbol::letter(U'#')}}};
  return g;
}

/// S -> a S b | eps.
inline Grammar grammar_anbn() {
  Grammar g;
  g.alphabet = {U'a', U'b'};
  g.nonterminals = {"S"};
  g.productions = {{0, {GrammarSymbol::letter(U'a'), GrammarSymbol::variable(0), GrammarSymbol::letter(U'b')}},
                   {0, {}}};
  return g;
}

/// A_k -> A_{k-1} A_{k-1}, ..., A_1 -> A_0 A_0, A_0 -> a: the single word a^(2^k).
inline Cfg doubling_grammar(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= k; ++i) names.push_back("A" + std::to_string(k - i));
  std::vector<CnfProduction> ps;
  for (std::size_t i = 0; i < k; ++i) {
    ps.push_back(CnfProduction::binary_rule(static_cast<Nonterminal>(i), static_cast<Nonterminal>(i + 1),
                                            static_cast<Nonterminal>(i + 1)));
  }
  ps.push_back(CnfProduction::terminal_rule(static_cast<Nonterminal>(k), U'a'));
  return Cfg({U'a'}, std::move(names), 0, std::move(ps));
}

/// All words over `alphabet` of length at most `max_length`, length-lexicographic.
inline std::vector<Word> all_words(const Alphabet& alphabet, std::size_t max_length) {
  std::vector<Word> out{Word()};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Letter c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

inline Alphabet first_letters(std::size_t k) {
  Alphabet out;
  for (std::size_t i = 0; i < k; ++i) out.insert(static_cast<Letter>(U'a' + i));
  return out;
}

inline Nfa random_nfa(std::mt19937_64& rng, std::size_t max_states, std::size_t alphabet_size,
                      double density = 0.35) {
  std::uniform_int_distribution<std::size_t> states_dist(1, max_states);
  std::bernoulli_distribution edge(density);
  std::bernoulli_distribution coin(0.4);
  const std::size_t n = states_dist(rng);
  const Alphabet alphabet = first_letters(alphabet_size);
  std::vector<NfaTransition> ts;
  for (State p = 0; p < n; ++p) {
    for (Letter c : alphabet) {
      for (State q = 0; q < n; ++q) {
        if (edge(rng)) ts.push_back({p, c, q});
      }
    }
  }
  StateSet initials{0};
  StateSet finals;
  for (State s = 0; s < n; ++s) {
    if (s > 0 && coin(rng) && coin(rng)) initials.insert(s);
    if (coin(rng)) finals.insert(s);
  }
  if (finals.empty()) finals.insert(static_cast<State>(n - 1));
  return Nfa(alphabet, n, std::move(initials), std::move(finals), std::move(ts));
}

inline Pda random_pda(std::mt19937_64& rng, std::size_t max_states, std::size_t alphabet_size,
                      std::size_t transitions = 7) {
  std::uniform_int_distribution<std::size_t> states_dist(1, max_states);
  const std::size_t n = states_dist(rng);
  const Alphabet alphabet = first_letters(alphabet_size);
  const std::vector<Letter> letters(alphabet.begin(), alphabet.end());
  const std::vector<StackSymbol> tops{kBottom, U'A', U'B'};
  std::uniform_int_distribution<std::size_t> state(0, n - 1);
  std::uniform_int_distribution<std::size_t> letter(0, letters.size() - 1);
  std::uniform_int_distribution<std::size_t> top(0, tops.size() - 1);
  std::uniform_int_distribution<std::size_t> push_length(0, 2);
  std::uniform_int_distribution<std::size_t> symbol(0, 1);
  std::vector<PdaTransition> ts;
  for (std::size_t i = 0; i < transitions; ++i) {
    std::u32string push;
    const std::size_t len = push_length(rng);
    for (std::size_t k = 0; k < len; ++k) push.push_back(symbol(rng) == 0 ? U'A' : U'B');
    ts.push_back({static_cast<State>(state(rng)), letters[letter(rng)], tops[top(rng)], static_cast<State>(state(rng)),
                  push});
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  StateSet finals{static_cast<State>(state(rng))};
  if (std::bernoulli_distribution(0.3)(rng)) finals.insert(static_cast<State>(state(rng)));
  return Pda(alphabet, {U'A', U'B'}, n, {0}, std::move(finals), std::move(ts));
}

}  // namespace fixtures
