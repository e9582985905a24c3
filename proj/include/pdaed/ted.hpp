#pragma once

// Threshold edit distance from a pushdown language to a regular language.
//
// The impact automaton runs the pushdown automaton in lockstep with a vector
// that records, for every NFA state s, the least number of edits after which
// the NFA can be in s on the input read so far, or # once that number exceeds
// the threshold. It accepts exactly the words whose distance to the NFA
// language exceeds the threshold, so the threshold holds iff it is empty.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pdaed/automata.hpp"
#include "pdaed/distance.hpp"
#include "pdaed/word_distance.hpp"

namespace pdaed {

struct ImpactVector {
  /// The # value.
  static constexpr std::uint64_t kHash = std::numeric_limits<std::uint64_t>::max();

  std::vector<std::uint64_t> values;

  bool is_hash(State s) const { return values[s] == kHash; }
  std::string to_string() const;

  friend bool operator==(const ImpactVector&, const ImpactVector&) = default;
};

/// Thresholds at least this large are treated as this value. Reaching an
/// entry of this size would take more impact states than can be explored.
inline constexpr std::uint64_t kThresholdCap = std::uint64_t{1} << 62;

std::uint64_t capped_threshold(const Natural& t);

ImpactVector impact_initial(const Nfa& nfa, const EditCostTable& table, const Natural& t);
ImpactVector impact_step(const ImpactVector& lambda, Letter a, const EditCostTable& table, const Natural& t);

/// Every final NFA state carries #.
bool impact_is_final(const ImpactVector& lambda, const Nfa& nfa);

/// |Q_P| * (t + 2)^|Q_N|.
Natural impact_state_bound(const Pda& pda, const Nfa& nfa, const Natural& t);

struct TedOptions {
  /// Upper limit on distinct (control, vector) pairs; 0 means unlimited.
  std::size_t max_states = 0;
};

struct TedResult {
  /// ed(L(pda), L(nfa)) <= t.
  bool within = true;
  /// A word of L(pda) at distance greater than t from L(nfa), when !within.
  std::optional<Word> counterexample;
  /// Distinct (pda state, vector) pairs reached.
  std::size_t explored_states = 0;
  std::size_t summary_facts = 0;
};

/// Throws BudgetExceeded when options.max_states is exceeded.
TedResult ted_decide(const Pda& pda, const Nfa& nfa, const Natural& t, const TedOptions& options = {});

/// L(pda) is a subset of L(nfa).
TedResult inclusion(const Pda& pda, const Nfa& nfa, const TedOptions& options = {});

/// The impact automaton restricted to pairs reachable in its control graph,
/// as an ordinary pushdown automaton.
struct ImpactAutomaton {
  Pda pda;
  std::vector<State> pda_state;        ///< per impact state
  std::vector<ImpactVector> vectors;   ///< per impact state
};

ImpactAutomaton build_impact_automaton(const Pda& pda, const Nfa& nfa, const Natural& t,
                                       std::size_t max_states = 0);

}  // namespace pdaed
