#pragma once

// Finite and pushdown automata over a finite alphabet of Unicode letters.
//
// A pushdown automaton is real-time: every transition reads exactly one input
// letter. Runs start with an empty stack and accept in a final state with an
// empty stack. Stacks are strings whose last character is the top.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pdaed {

using Letter = char32_t;
using Word = std::u32string;
using StackSymbol = char32_t;
using State = std::uint32_t;
using StateSet = std::set<State>;
using Alphabet = std::set<Letter>;

/// Stack-top marker of transitions that fire only on the empty stack.
inline constexpr StackSymbol kBottom = U'⊥';

struct NfaTransition {
  State from;
  Letter letter;
  State to;

  friend auto operator<=>(const NfaTransition&, const NfaTransition&) = default;
};

class Nfa {
 public:
  Nfa() = default;

  /// Throws ValidationError when an endpoint is not a state or a letter is
  /// outside the alphabet. `state_names` is optional; names default to
  /// decimal indices.
  Nfa(Alphabet alphabet, std::size_t num_states, StateSet initials, StateSet finals,
      std::vector<NfaTransition> transitions, std::vector<std::string> state_names = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  const StateSet& initials() const noexcept { return initials_; }
  const StateSet& finals() const noexcept { return finals_; }
  const std::vector<NfaTransition>& transitions() const noexcept { return transitions_; }
  const std::vector<std::string>& state_names() const noexcept { return state_names_; }

  bool is_final(State s) const { return finals_.count(s) != 0; }

  /// Outgoing transitions of `s`, in insertion order.
  const std::vector<NfaTransition>& outgoing(State s) const { return outgoing_[s]; }

  /// |Q| + |delta|.
  std::size_t size() const noexcept { return num_states_ + transitions_.size(); }

 private:
  Alphabet alphabet_;
  std::size_t num_states_ = 0;
  StateSet initials_;
  StateSet finals_;
  std::vector<NfaTransition> transitions_;
  std::vector<std::string> state_names_;
  std::vector<std::vector<NfaTransition>> outgoing_;
};

/// An Nfa with a single initial state whose transitions form a partial function.
class Dfa {
 public:
  /// Throws ValidationError when `nfa` is not deterministic.
  explicit Dfa(Nfa nfa);

  const Nfa& nfa() const noexcept { return nfa_; }
  operator const Nfa&() const noexcept { return nfa_; }  // NOLINT(google-explicit-constructor)

 private:
  Nfa nfa_;
};

struct PdaTransition {
  State from;
  Letter letter;
  StackSymbol top;  ///< kBottom: fires only on the empty stack.
  State to;
  std::u32string push;  ///< Replaces `top`; last character becomes the new top.

  friend auto operator<=>(const PdaTransition&, const PdaTransition&) = default;
};

class Pda {
 public:
  Pda() = default;

  /// Throws ValidationError on malformed components, including kBottom inside
  /// the stack alphabet or a push string.
  Pda(Alphabet alphabet, std::set<StackSymbol> stack_alphabet, std::size_t num_states, StateSet initials,
      StateSet finals, std::vector<PdaTransition> transitions, std::vector<std::string> state_names = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::set<StackSymbol>& stack_alphabet() const noexcept { return stack_alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  const StateSet& initials() const noexcept { return initials_; }
  const StateSet& finals() const noexcept { return finals_; }
  const std::vector<PdaTransition>& transitions() const noexcept { return transitions_; }
  const std::vector<std::string>& state_names() const noexcept { return state_names_; }
  const std::vector<PdaTransition>& outgoing(State s) const { return outgoing_[s]; }

  bool is_final(State s) const { return finals_.count(s) != 0; }
  std::size_t max_push_length() const noexcept { return max_push_; }
  std::size_t size() const noexcept { return num_states_ + transitions_.size(); }

 private:
  Alphabet alphabet_;
  std::set<StackSymbol> stack_alphabet_;
  std::size_t num_states_ = 0;
  StateSet initials_;
  StateSet finals_;
  std::vector<PdaTransition> transitions_;
  std::vector<std::string> state_names_;
  std::vector<std::vector<PdaTransition>> outgoing_;
  std::size_t max_push_ = 0;
};

struct PdaConfiguration {
  State state;
  std::u32string stack;

  friend auto operator<=>(const PdaConfiguration&, const PdaConfiguration&) = default;
};

/// States reachable from an initial state on `word`. Throws ValidationError
/// for letters outside the alphabet.
StateSet nfa_reachable_states(const Nfa& nfa, const Word& word);

/// States reachable from `from` on `word`; letters outside the alphabet lead nowhere.
StateSet nfa_post(const Nfa& nfa, const StateSet& from, const Word& word);

bool nfa_accepts(const Nfa& nfa, const Word& word);

/// Successor configurations of `config` on `letter`.
std::vector<PdaConfiguration> pda_step(const Pda& pda, const PdaConfiguration& config, Letter letter);

bool pda_accepts(const Pda& pda, const Word& word);

/// States reachable from `from` by any word (including `from` itself).
StateSet forward_closure(const Nfa& nfa, const StateSet& from);

/// States from which some state of `targets` is reachable.
StateSet backward_closure(const Nfa& nfa, const StateSet& targets);

/// A shortest accepted word, or nullopt if the language is empty.
std::optional<Word> shortest_accepted_word(const Nfa& nfa);

/// Removes states unreachable from the initials or unable to reach a final
/// state. The language is unchanged.
Nfa trim(const Nfa& nfa);

/// Safety automaton (every state final) recognizing the prefixes of L(nfa).
/// Has no states when L(nfa) is empty.
Nfa prefix_closure(const Nfa& nfa);

bool is_safety(const Nfa& nfa);

bool is_deterministic(const Nfa& nfa);
bool is_deterministic(const Pda& pda);

/// Complete subset-construction automaton over `alphabet` (which must contain
/// the NFA's alphabet). State 0 is the initial subset.
Dfa determinize(const Nfa& nfa, const Alphabet& alphabet);

/// L(a) is a subset of L(b), decided by subset construction on `b`. Returns a
/// shortest word of L(a) outside L(b), or nullopt when the inclusion holds.
std::optional<Word> nfa_inclusion_counterexample(const Nfa& a, const Nfa& b);

/// L(nfa) equals alphabet*.
bool nfa_is_universal(const Nfa& nfa, const Alphabet& alphabet);

/// The NFA as a pushdown automaton that never touches its stack.
Pda nfa_to_pda(const Nfa& nfa);

struct EmptinessResult {
  bool empty = true;
  std::optional<Word> witness;  ///< Shortest accepted word when nonempty.
  std::size_t saturation_items = 0;
};

/// Decides L(pda) = {} by saturation on the input-erased pushdown system.
EmptinessResult pda_emptiness(const Pda& pda);

/// Language inclusion L(pda) in L(nfa) through determinization of `nfa` and a
/// product with `pda`. Returns a shortest counterexample, or nullopt.
std::optional<Word> pda_nfa_inclusion_counterexample(const Pda& pda, const Nfa& nfa);

/// Calls `visit` on every accepted word of length at most `max_length`, in
/// length-lexicographic order by code point. `visit` returns false to stop.
/// Throws BudgetExceeded when a configuration set grows beyond `config_cap`.
void for_each_accepted_word(const Pda& pda, std::size_t max_length, const std::function<bool(const Word&)>& visit,
                            std::size_t config_cap = 1'000'000);

}  // namespace pdaed
