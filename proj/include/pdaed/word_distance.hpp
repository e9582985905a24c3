#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pdaed/automata.hpp"
#include "pdaed/distance.hpp"

namespace pdaed {

/// Levenshtein distance (unit-cost insertions, deletions and substitutions).
std::uint64_t edit_distance_words(const Word& a, const Word& b);

/// Edit costs of single letters against an NFA.
///
/// cost(s, s', a) is the least number of edits turning the one-letter word `a`
/// into a word that the automaton can read from s' to s; insertion(s, s') is
/// the same for the empty word, i.e. the length of a shortest path s' -> s.
/// Letters outside the automaton's alphabet are valid arguments: they can
/// only be deleted or substituted.
class EditCostTable {
 public:
  explicit EditCostTable(const Nfa& nfa);

  std::size_t num_states() const noexcept { return n_; }
  const StateSet& initials() const noexcept { return initials_; }
  const StateSet& finals() const noexcept { return finals_; }

  Distance insertion(State target, State source) const { return insertion_[target * n_ + source]; }
  Distance cost(State target, State source, Letter a) const { return matrix(a)[target * n_ + source]; }

  /// Row-major n x n matrix of cost(., ., a).
  const std::vector<Distance>& matrix(Letter a) const;

 private:
  std::size_t n_ = 0;
  StateSet initials_;
  StateSet finals_;
  std::vector<Distance> insertion_;
  std::map<Letter, std::vector<Distance>> by_letter_;
  std::vector<Distance> foreign_;
};

EditCostTable build_edit_cost_table(const Nfa& nfa);

/// d_w: for each state s, the least number of edits applied to w such that
/// the automaton reaches s on the result.
using DistanceVector = std::vector<Distance>;

/// d for the empty word.
DistanceVector initial_distances(const EditCostTable& table);

/// d_{wa}(s) = min over s' of d_w(s') + cost(s, s', a).
DistanceVector distance_step(const DistanceVector& current, Letter a, const EditCostTable& table);

/// Distances of `word` to every state.
DistanceVector distances_after(const Word& word, const EditCostTable& table);

/// inf over w' in L(nfa) of ed(word, w'); infinite iff L(nfa) is empty.
Distance word_to_nfa_distance(const Word& word, const Nfa& nfa);
Distance word_to_nfa_distance(const Word& word, const EditCostTable& table);

/// States reachable by any word from the states reached from `from` on `u`.
StateSet reach_set(const Word& u, const StateSet& from, const Nfa& nfa);

/// Applies reach_set for u_1, ..., u_k in turn, starting from all states, and
/// reports whether the result is empty.
bool nested_reach_empty(std::span<const Word> parts, const Nfa& nfa);

}  // namespace pdaed
