#pragma once

// Naive reference procedures used only by tests.

#include <algorithm>
#include <functional>
#include <vector>

#include "pdaed/automata.hpp"
#include "pdaed/grammar.hpp"

namespace reference {

using namespace pdaed;

/// Enumerates NFA runs one path at a time.
inline bool nfa_run_accepts(const Nfa& nfa, const Word& w) {
  std::function<bool(State, std::size_t)> go = [&](State s, std::size_t i) {
    if (i == w.size()) return nfa.is_final(s);
    for (const auto& t : nfa.transitions()) {
      if (t.from == s && t.letter == w[i] && go(t.to, i + 1)) return true;
    }
    return false;
  };
  return std::any_of(nfa.initials().begin(), nfa.initials().end(), [&](State s) { return go(s, 0); });
}

/// Membership in a general grammar: least fixpoint of "nonterminal derives
/// the factor w[i, j)" over all factors, which tolerates epsilon rules and
/// cycles.
inline bool grammar_derives(const Grammar& g, const Word& w) {
  const std::size_t n = w.size();
  const std::size_t v = g.nonterminals.size();
  std::vector<char> table(v * (n + 1) * (n + 1), 0);
  auto at = [&](std::size_t a, std::size_t i, std::size_t j) -> char& { return table[(a * (n + 1) + i) * (n + 1) + j]; };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      for (std::size_t i = 0; i <= n; ++i) {
        // reach[j]: the processed prefix of the right-hand side derives w[i, j).
        std::vector<char> reach(n + 1, 0);
        reach[i] = 1;
        for (const auto& s : p.rhs) {
          std::vector<char> next(n + 1, 0);
          for (std::size_t j = i; j <= n; ++j) {
            if (!reach[j]) continue;
            if (s.terminal) {
              if (j < n && w[j] == static_cast<Letter>(s.value)) next[j + 1] = 1;
            } else {
              for (std::size_t k = j; k <= n; ++k) {
                if (at(s.value, j, k)) next[k] = 1;
              }
            }
          }
          reach = std::move(next);
        }
        for (std::size_t j = i; j <= n; ++j) {
          if (reach[j] && !at(p.lhs, i, j)) {
            at(p.lhs, i, j) = 1;
            changed = true;
          }
        }
      }
    }
  }
  return at(g.start, 0, n) != 0;
}

}  // namespace reference
