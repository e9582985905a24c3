#pragma once

// Finiteness of the edit distance from a pushdown language to a regular
// language, its exact value, certificates of infinity, and the hat closure
// used to build instances whose distance is finite exactly when one language
// includes the other.

#include <cstdint>
#include <optional>

#include "pdaed/automata.hpp"
#include "pdaed/distance.hpp"
#include "pdaed/grammar.hpp"
#include "pdaed/ted.hpp"

namespace pdaed {

/// B = (2^(T+1) - 2) * n + 2^T for a grammar with T nonterminals and a safety
/// automaton with n states. Against a safety automaton, a distance above B is
/// infinite. `adjustment` is the size |Q| + |delta| of the original automaton,
/// the most by which its distance can exceed that of its prefix closure.
struct BoundReport {
  std::size_t nonterminals = 0;
  std::size_t safety_states = 0;
  Natural bound;
  std::size_t adjustment = 0;
};

/// Throws PreconditionError when nonterminals == 0.
BoundReport fed_bound(std::size_t nonterminals, std::size_t safety_states);
/// Throws PreconditionError when `safety` has a non-final state.
BoundReport fed_bound(const Cfg& grammar, const Nfa& safety);

struct FedOptions {
  TedOptions ted;
  /// Refuse (or, with best_effort, truncate) analyses whose bound B exceeds this.
  std::optional<Natural> max_bound;
  bool best_effort = false;
  /// A grammar for L(pda) to take T from instead of converting the automaton.
  std::optional<Cfg> grammar;
};

enum class Finiteness { finite, infinite, undetermined };

const char* to_string(Finiteness f);

struct FedVerdict {
  Finiteness verdict = Finiteness::finite;
  BoundReport bound;
  /// The distance to the prefix closure exceeds this value (when known).
  std::optional<Natural> safety_exceeds;
  /// The distance to the prefix closure is at most this value (finite only).
  std::optional<Natural> safety_at_most;
  /// Infinite: a word of L(pda) farther than B from the prefix closure.
  std::optional<Word> counterexample;
  std::size_t probes = 0;
  std::size_t explored_states = 0;
};

/// Throws BudgetExceeded when B exceeds options.max_bound and best_effort is
/// off; with best_effort, thresholds up to max_bound are tried and the verdict
/// is `undetermined` when none of them holds.
FedVerdict fed_decide(const Pda& pda, const Nfa& nfa, const FedOptions& options = {});

struct ThresholdDecision {
  TedResult result;
  /// Set when the threshold was at least B + |A_N| and the finiteness check
  /// answered instead. No counterexample is produced in that case.
  std::optional<FedVerdict> fed;
};

/// ted_decide that stays finite for arbitrarily large thresholds: a finite
/// distance never exceeds B + |A_N|, so larger thresholds reduce to FED.
ThresholdDecision threshold_decide(const Pda& pda, const Nfa& nfa, const Natural& t, const FedOptions& options = {});

struct DistanceReport {
  Distance value = Distance::infinity();
  FedVerdict fed;
  /// A word of L(pda) whose distance to L(nfa) equals `value` (absent when the
  /// value is 0). For infinite values, the counterexample from the FED step.
  std::optional<Word> witness;
  std::size_t probes = 0;
  std::size_t explored_states = 0;
};

/// ed(L(pda), L(nfa)). When the FED step is undetermined the value is infinite
/// and report.fed.verdict says so.
DistanceReport edit_distance_compute(const Pda& pda, const Nfa& nfa, const FedOptions& options = {});

struct InfiniteWitnessOptions {
  FedOptions fed;
  /// Longest source word to decompose.
  std::size_t max_word_length = 12;
};

/// A word of L(pda) with a compact decomposition whose pumpable parts empty
/// the nested reachability sets of the prefix closure of `nfa`, so that w(l)
/// needs at least l edits. nullopt when no such word is found within the
/// length budget. Throws PreconditionError when the distance is finite.
std::optional<CompactDecomposition> infinite_witness(const Pda& pda, const Nfa& nfa,
                                                     const InfiniteWitnessOptions& options = {});

/// Automaton for {#w_1#...#w_k# : k >= 0, w_i in L}. Throws ValidationError
/// when `marker` already belongs to the alphabet.
Nfa hat_closure(const Nfa& nfa, Letter marker);
/// As above; the new transitions fire only on the empty stack.
Pda hat_closure(const Pda& pda, Letter marker);

}  // namespace pdaed
