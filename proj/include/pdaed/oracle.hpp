#pragma once

// Brute-force reference procedures for small instances. They share no code
// with the dynamic programs they check: source words come from direct PDA
// simulation, target words from exhaustive search over NFA runs, and every
// distance is a Levenshtein computation between two concrete words.

#include <cstddef>
#include <optional>

#include "pdaed/automata.hpp"
#include "pdaed/distance.hpp"

namespace pdaed {

struct OracleBudget {
  std::size_t source_length = 6;      ///< Longest source word enumerated.
  std::size_t target_length = 64;     ///< Longest target word considered.
  std::size_t config_cap = 1'000'000; ///< PDA simulation limit.

  /// Throws ValidationError unless every field is positive.
  void validate() const;
};

/// inf over w' in L(nfa) of ed(w, w'), exact. Candidate targets are no longer
/// than |w| + ed(w, v) for a shortest v in L(nfa), since every longer target
/// needs more insertions than v needs edits. Throws BudgetExceeded when that
/// length exceeds budget.target_length.
Distance oracle_word_to_language(const Word& w, const Nfa& nfa, const OracleBudget& budget = {});

struct OracleSup {
  /// max over enumerated source words; a lower bound on the language distance.
  Distance value = 0;
  std::optional<Word> witness;
  std::size_t words = 0;
};

OracleSup oracle_sup_distance(const Pda& pda, const Nfa& nfa, const OracleBudget& budget = {});

struct OracleTed {
  bool violation_found = false;
  std::optional<Word> witness;  ///< First violating word in length-lexicographic order.
};

OracleTed oracle_ted(const Pda& pda, const Nfa& nfa, std::uint64_t t, const OracleBudget& budget = {});

}  // namespace pdaed
