#include "pdaed/oracle.hpp"

#include <algorithm>
#include <set>

#include "pdaed/errors.hpp"
#include "pdaed/word_distance.hpp"

namespace pdaed {

void OracleBudget::validate() const {
  if (source_length == 0 || target_length == 0 || config_cap == 0) {
    throw ValidationError("oracle budgets must be positive");
  }
}

namespace {

// Depth-first search over target prefixes, carrying the set of NFA states
// reached and the Levenshtein column of the prefix against `w`.
class TargetSearch {
 public:
  TargetSearch(const Word& w, const Nfa& nfa, std::uint64_t best, std::size_t max_length)
      : w_(w), nfa_(nfa), best_(best), max_length_(max_length) {}

  std::uint64_t run() {
    std::vector<std::uint64_t> column(w_.size() + 1);
    for (std::size_t i = 0; i <= w_.size(); ++i) column[i] = i;
    visit(nfa_.initials(), column, 0);
    return best_;
  }

 private:
  void visit(const StateSet& states, const std::vector<std::uint64_t>& column, std::size_t length) {
    if (states.empty()) return;
    if (!seen_.insert({states, column}).second) return;
    if (std::any_of(states.begin(), states.end(), [&](State s) { return nfa_.is_final(s); })) {
      best_ = std::min(best_, column.back());
    }
    if (length == max_length_ || *std::min_element(column.begin(), column.end()) >= best_) return;
    for (Letter a : nfa_.alphabet()) {
      const StateSet next = nfa_post(nfa_, states, Word(1, a));
      if (next.empty()) continue;
      std::vector<std::uint64_t> extended(column.size());
      extended[0] = column[0] + 1;
      for (std::size_t i = 1; i < column.size(); ++i) {
        extended[i] = std::min({column[i] + 1, extended[i - 1] + 1, column[i - 1] + (w_[i - 1] == a ? 0 : 1)});
      }
      visit(next, extended, length + 1);
    }
  }

  const Word& w_;
  const Nfa& nfa_;
  std::uint64_t best_;
  std::size_t max_length_;
  std::set<std::pair<StateSet, std::vector<std::uint64_t>>> seen_;
};

Distance distance_with_shortest(const Word& w, const Nfa& nfa, const std::optional<Word>& shortest,
                                const OracleBudget& budget) {
  if (!shortest) return Distance::infinity();
  const std::uint64_t initial = edit_distance_words(w, *shortest);
  const std::size_t needed = w.size() + initial;
  if (needed > budget.target_length) {
    throw BudgetExceeded("oracle target length " + std::to_string(needed) + " exceeds budget " +
                         std::to_string(budget.target_length));
  }
  return TargetSearch(w, nfa, initial, needed).run();
}

}  // namespace

Distance oracle_word_to_language(const Word& w, const Nfa& nfa, const OracleBudget& budget) {
  budget.validate();
  return distance_with_shortest(w, nfa, shortest_accepted_word(nfa), budget);
}

OracleSup oracle_sup_distance(const Pda& pda, const Nfa& nfa, const OracleBudget& budget) {
  budget.validate();
  const auto shortest = shortest_accepted_word(nfa);
  OracleSup result;
  for_each_accepted_word(
      pda, budget.source_length,
      [&](const Word& w) {
        ++result.words;
        const Distance d = distance_with_shortest(w, nfa, shortest, budget);
        if (!result.witness || d > result.value) {
          result.value = d;
          result.witness = w;
        }
        return true;
      },
      budget.config_cap);
  return result;
}

OracleTed oracle_ted(const Pda& pda, const Nfa& nfa, std::uint64_t t, const OracleBudget& budget) {
  budget.validate();
  const auto shortest = shortest_accepted_word(nfa);
  OracleTed result;
  for_each_accepted_word(
      pda, budget.source_length,
      [&](const Word& w) {
        if (distance_with_shortest(w, nfa, shortest, budget) > Distance(t)) {
          result.violation_found = true;
          result.witness = w;
          return false;
        }
        return true;
      },
      budget.config_cap);
  return result;
}

}  // namespace pdaed
