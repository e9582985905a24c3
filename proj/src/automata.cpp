#include "pdaed/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <tuple>
#include <string>

#include "pdaed/detail/pushdown_system.hpp"
#include "pdaed/errors.hpp"

namespace pdaed {

namespace {

std::vector<std::string> default_names(std::size_t n, std::vector<std::string> names) {
  if (names.empty()) {
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  return names;
}

void check_states(const StateSet& states, std::size_t n, const char* what) {
  for (State s : states) {
    if (s >= n) throw ValidationError(std::string(what) + " state " + std::to_string(s) + " is not a state");
  }
}

}  // namespace

Nfa::Nfa(Alphabet alphabet, std::size_t num_states, StateSet initials, StateSet finals,
         std::vector<NfaTransition> transitions, std::vector<std::string> state_names)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initials_(std::move(initials)),
      finals_(std::move(finals)),
      transitions_(std::move(transitions)),
      state_names_(default_names(num_states, std::move(state_names))) {
  if (state_names_.size() != num_states_) throw ValidationError("state name count does not match state count");
  check_states(initials_, num_states_, "initial");
  check_states(finals_, num_states_, "final");
  outgoing_.resize(num_states_);
  for (const auto& t : transitions_) {
    if (t.from >= num_states_ || t.to >= num_states_) throw ValidationError("transition endpoint is not a state");
    if (alphabet_.count(t.letter) == 0) throw ValidationError("transition letter is not in the alphabet");
    outgoing_[t.from].push_back(t);
  }
}

Dfa::Dfa(Nfa nfa) : nfa_(std::move(nfa)) {
  if (!is_deterministic(nfa_)) throw ValidationError("automaton is not deterministic");
}

Pda::Pda(Alphabet alphabet, std::set<StackSymbol> stack_alphabet, std::size_t num_states, StateSet initials,
         StateSet finals, std::vector<PdaTransition> transitions, std::vector<std::string> state_names)
    : alphabet_(std::move(alphabet)),
      stack_alphabet_(std::move(stack_alphabet)),
      num_states_(num_states),
      initials_(std::move(initials)),
      finals_(std::move(finals)),
      transitions_(std::move(transitions)),
      state_names_(default_names(num_states, std::move(state_names))) {
  if (state_names_.size() != num_states_) throw ValidationError("state name count does not match state count");
  if (stack_alphabet_.count(kBottom) != 0) throw ValidationError("the bottom marker cannot be a stack symbol");
  check_states(initials_, num_states_, "initial");
  check_states(finals_, num_states_, "final");
  outgoing_.resize(num_states_);
  for (const auto& t : transitions_) {
    if (t.from >= num_states_ || t.to >= num_states_) throw ValidationError("transition endpoint is not a state");
    if (alphabet_.count(t.letter) == 0) throw ValidationError("transition letter is not in the alphabet");
    if (t.top != kBottom && stack_alphabet_.count(t.top) == 0) {
      throw ValidationError("transition stack top is not in the stack alphabet");
    }
    for (StackSymbol s : t.push) {
      if (stack_alphabet_.count(s) == 0) throw ValidationError("push string symbol is not in the stack alphabet");
    }
    max_push_ = std::max(max_push_, t.push.size());
    outgoing_[t.from].push_back(t);
  }
}

StateSet nfa_post(const Nfa& nfa, const StateSet& from, const Word& word) {
  StateSet current = from;
  for (Letter a : word) {
    StateSet next;
    for (State s : current) {
      for (const auto& t : nfa.outgoing(s)) {
        if (t.letter == a) next.insert(t.to);
      }
    }
    current = std::move(next);
    if (current.empty()) break;
  }
  return current;
}

StateSet nfa_reachable_states(const Nfa& nfa, const Word& word) {
  for (Letter a : word) {
    if (nfa.alphabet().count(a) == 0) throw ValidationError("letter is not in the alphabet");
  }
  return nfa_post(nfa, nfa.initials(), word);
}

bool nfa_accepts(const Nfa& nfa, const Word& word) {
  for (State s : nfa_post(nfa, nfa.initials(), word)) {
    if (nfa.is_final(s)) return true;
  }
  return false;
}

std::vector<PdaConfiguration> pda_step(const Pda& pda, const PdaConfiguration& config, Letter letter) {
  std::vector<PdaConfiguration> next;
  const StackSymbol top = config.stack.empty() ? kBottom : config.stack.back();
  for (const auto& t : pda.outgoing(config.state)) {
    if (t.letter != letter || t.top != top) continue;
    PdaConfiguration c{t.to, config.stack};
    if (top != kBottom) c.stack.pop_back();
    c.stack += t.push;
    next.push_back(std::move(c));
  }
  return next;
}

bool pda_accepts(const Pda& pda, const Word& word) {
  std::set<PdaConfiguration> current;
  for (State s : pda.initials()) current.insert({s, {}});
  for (std::size_t i = 0; i < word.size() && !current.empty(); ++i) {
    // Each remaining step pops at most one symbol, so taller stacks cannot empty in time.
    const std::size_t remaining = word.size() - i - 1;
    std::set<PdaConfiguration> next;
    for (const auto& c : current) {
      for (auto& n : pda_step(pda, c, word[i])) {
        if (n.stack.size() <= remaining) next.insert(std::move(n));
      }
    }
    current = std::move(next);
  }
  return std::any_of(current.begin(), current.end(),
                     [&](const PdaConfiguration& c) { return c.stack.empty() && pda.is_final(c.state); });
}

StateSet forward_closure(const Nfa& nfa, const StateSet& from) {
  StateSet seen = from;
  std::vector<State> stack(from.begin(), from.end());
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    for (const auto& t : nfa.outgoing(s)) {
      if (seen.insert(t.to).second) stack.push_back(t.to);
    }
  }
  return seen;
}

StateSet backward_closure(const Nfa& nfa, const StateSet& targets) {
  std::vector<std::vector<State>> incoming(nfa.num_states());
  for (const auto& t : nfa.transitions()) incoming[t.to].push_back(t.from);
  StateSet seen = targets;
  std::vector<State> stack(targets.begin(), targets.end());
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    for (State p : incoming[s]) {
      if (seen.insert(p).second) stack.push_back(p);
    }
  }
  return seen;
}

std::optional<Word> shortest_accepted_word(const Nfa& nfa) {
  // Breadth-first over states, letters in code-point order.
  std::vector<std::vector<NfaTransition>> sorted(nfa.num_states());
  for (State s = 0; s < nfa.num_states(); ++s) {
    sorted[s] = nfa.outgoing(s);
    std::stable_sort(sorted[s].begin(), sorted[s].end(),
                     [](const NfaTransition& a, const NfaTransition& b) { return a.letter < b.letter; });
  }
  std::vector<std::optional<std::pair<State, Letter>>> parent(nfa.num_states());
  std::vector<bool> seen(nfa.num_states(), false);
  std::deque<State> queue;
  for (State s : nfa.initials()) {
    seen[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    if (nfa.is_final(s)) {
      Word word;
      for (State cur = s; parent[cur]; cur = parent[cur]->first) word.push_back(parent[cur]->second);
      std::reverse(word.begin(), word.end());
      return word;
    }
    for (const auto& t : sorted[s]) {
      if (!seen[t.to]) {
        seen[t.to] = true;
        parent[t.to] = std::make_pair(s, t.letter);
        queue.push_back(t.to);
      }
    }
  }
  return std::nullopt;
}

namespace {

Nfa restrict_to(const Nfa& nfa, const StateSet& keep, bool all_final) {
  std::vector<State> renumber(nfa.num_states(), 0);
  std::vector<std::string> names;
  State next = 0;
  for (State s = 0; s < nfa.num_states(); ++s) {
    if (keep.count(s) != 0) {
      renumber[s] = next++;
      names.push_back(nfa.state_names()[s]);
    }
  }
  StateSet initials;
  StateSet finals;
  for (State s : nfa.initials()) {
    if (keep.count(s) != 0) initials.insert(renumber[s]);
  }
  for (State s : keep) {
    if (all_final || nfa.is_final(s)) finals.insert(renumber[s]);
  }
  std::vector<NfaTransition> transitions;
  for (const auto& t : nfa.transitions()) {
    if (keep.count(t.from) != 0 && keep.count(t.to) != 0) transitions.push_back({renumber[t.from], t.letter, renumber[t.to]});
  }
  return Nfa(nfa.alphabet(), next, std::move(initials), std::move(finals), std::move(transitions), std::move(names));
}

StateSet useful_states(const Nfa& nfa) {
  const StateSet reachable = forward_closure(nfa, nfa.initials());
  const StateSet productive = backward_closure(nfa, nfa.finals());
  StateSet keep;
  std::set_intersection(reachable.begin(), reachable.end(), productive.begin(), productive.end(),
                        std::inserter(keep, keep.end()));
  return keep;
}

}  // namespace

Nfa trim(const Nfa& nfa) { return restrict_to(nfa, useful_states(nfa), false); }

Nfa prefix_closure(const Nfa& nfa) { return restrict_to(nfa, useful_states(nfa), true); }

bool is_safety(const Nfa& nfa) { return nfa.finals().size() == nfa.num_states(); }

bool is_deterministic(const Nfa& nfa) {
  if (nfa.initials().size() != 1) return false;
  std::set<std::pair<State, Letter>> keys;
  for (const auto& t : nfa.transitions()) {
    if (!keys.emplace(t.from, t.letter).second) return false;
  }
  return true;
}

bool is_deterministic(const Pda& pda) {
  if (pda.initials().size() != 1) return false;
  std::set<std::tuple<State, Letter, StackSymbol>> keys;
  for (const auto& t : pda.transitions()) {
    if (!keys.emplace(t.from, t.letter, t.top).second) return false;
  }
  return true;
}

Dfa determinize(const Nfa& nfa, const Alphabet& alphabet) {
  for (Letter a : nfa.alphabet()) {
    if (alphabet.count(a) == 0) throw PreconditionError("determinize: alphabet must contain the automaton's letters");
  }
  std::map<StateSet, State> index;
  std::vector<StateSet> subsets;
  std::vector<NfaTransition> transitions;
  index.emplace(nfa.initials(), 0);
  subsets.push_back(nfa.initials());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Letter a : alphabet) {
      StateSet next = nfa_post(nfa, subsets[i], Word(1, a));
      auto [it, inserted] = index.emplace(next, static_cast<State>(subsets.size()));
      if (inserted) subsets.push_back(std::move(next));
      transitions.push_back({static_cast<State>(i), a, it->second});
    }
  }
  StateSet finals;
  for (State i = 0; i < subsets.size(); ++i) {
    if (std::any_of(subsets[i].begin(), subsets[i].end(), [&](State s) { return nfa.is_final(s); })) finals.insert(i);
  }
  return Dfa(Nfa(alphabet, subsets.size(), {0}, std::move(finals), std::move(transitions)));
}

namespace {

Alphabet united(const Alphabet& a, const Alphabet& b) {
  Alphabet u = a;
  u.insert(b.begin(), b.end());
  return u;
}

}  // namespace

std::optional<Word> nfa_inclusion_counterexample(const Nfa& a, const Nfa& b) {
  const Alphabet sigma = united(a.alphabet(), b.alphabet());
  const Dfa det = determinize(b, sigma);
  const Nfa& d = det.nfa();
  // Product of `a` with the complement of `d`.
  std::vector<NfaTransition> transitions;
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  StateSet initials;
  for (State s : a.initials()) {
    index.emplace(std::make_pair(s, State{0}), static_cast<State>(pairs.size()));
    initials.insert(static_cast<State>(pairs.size()));
    pairs.emplace_back(s, 0);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    for (const auto& t : a.outgoing(p)) {
      for (const auto& u : d.outgoing(q)) {
        if (u.letter != t.letter) continue;
        auto [it, inserted] = index.emplace(std::make_pair(t.to, u.to), static_cast<State>(pairs.size()));
        if (inserted) pairs.emplace_back(t.to, u.to);
        transitions.push_back({static_cast<State>(i), t.letter, it->second});
      }
    }
  }
  StateSet finals;
  for (State i = 0; i < pairs.size(); ++i) {
    if (a.is_final(pairs[i].first) && !d.is_final(pairs[i].second)) finals.insert(i);
  }
  return shortest_accepted_word(Nfa(sigma, pairs.size(), std::move(initials), std::move(finals), std::move(transitions)));
}

bool nfa_is_universal(const Nfa& nfa, const Alphabet& alphabet) {
  Alphabet sigma = united(alphabet, nfa.alphabet());
  std::vector<NfaTransition> loops;
  for (Letter a : sigma) loops.push_back({0, a, 0});
  const Nfa all(sigma, 1, {0}, {0}, std::move(loops));
  return !nfa_inclusion_counterexample(all, nfa).has_value();
}

Pda nfa_to_pda(const Nfa& nfa) {
  std::vector<PdaTransition> transitions;
  transitions.reserve(nfa.transitions().size());
  for (const auto& t : nfa.transitions()) transitions.push_back({t.from, t.letter, kBottom, t.to, {}});
  return Pda(nfa.alphabet(), {}, nfa.num_states(), nfa.initials(), nfa.finals(), std::move(transitions),
             nfa.state_names());
}

EmptinessResult pda_emptiness(const Pda& pda) {
  const auto encoding = detail::encode_pda(pda);
  const auto saturation = detail::saturate(encoding.system);
  EmptinessResult result;
  result.empty = !saturation.reachable;
  result.witness = saturation.witness;
  result.saturation_items = saturation.items;
  return result;
}

std::optional<Word> pda_nfa_inclusion_counterexample(const Pda& pda, const Nfa& nfa) {
  const Alphabet sigma = united(pda.alphabet(), nfa.alphabet());
  const Dfa det = determinize(nfa, sigma);
  const Nfa& d = det.nfa();
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  StateSet initials;
  for (State s : pda.initials()) {
    index.emplace(std::make_pair(s, State{0}), static_cast<State>(pairs.size()));
    initials.insert(static_cast<State>(pairs.size()));
    pairs.emplace_back(s, 0);
  }
  std::vector<PdaTransition> transitions;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    for (const auto& t : pda.outgoing(p)) {
      for (const auto& u : d.outgoing(q)) {
        if (u.letter != t.letter) continue;
        auto [it, inserted] = index.emplace(std::make_pair(t.to, u.to), static_cast<State>(pairs.size()));
        if (inserted) pairs.emplace_back(t.to, u.to);
        transitions.push_back({static_cast<State>(i), t.letter, t.top, it->second, t.push});
      }
    }
  }
  StateSet finals;
  for (State i = 0; i < pairs.size(); ++i) {
    if (pda.is_final(pairs[i].first) && !d.is_final(pairs[i].second)) finals.insert(i);
  }
  const Pda product(sigma, pda.stack_alphabet(), pairs.size(), std::move(initials), std::move(finals),
                    std::move(transitions));
  return pda_emptiness(product).witness;
}

void for_each_accepted_word(const Pda& pda, std::size_t max_length, const std::function<bool(const Word&)>& visit,
                            std::size_t config_cap) {
  using Configurations = std::set<PdaConfiguration>;
  Configurations start;
  for (State s : pda.initials()) start.insert({s, {}});
  const std::vector<Letter> letters(pda.alphabet().begin(), pda.alphabet().end());

  for (std::size_t length = 0; length <= max_length; ++length) {
    // Depth-first in lexicographic order over words of exactly `length` letters.
    struct Frame {
      Configurations configs;
      std::size_t next_letter;
    };
    Word word;
    std::vector<Frame> stack;
    stack.push_back({start, 0});
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (word.size() == length) {
        const bool accepted = std::any_of(frame.configs.begin(), frame.configs.end(), [&](const PdaConfiguration& c) {
          return c.stack.empty() && pda.is_final(c.state);
        });
        if (accepted && !visit(word)) return;
        stack.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      if (frame.next_letter == letters.size()) {
        stack.pop_back();
        if (!word.empty() && !stack.empty()) word.pop_back();
        continue;
      }
      const Letter a = letters[frame.next_letter++];
      const std::size_t remaining = length - word.size() - 1;
      Configurations next;
      for (const auto& c : frame.configs) {
        for (auto& n : pda_step(pda, c, a)) {
          if (n.stack.size() <= remaining) next.insert(std::move(n));
        }
      }
      if (next.size() > config_cap) throw BudgetExceeded("configuration cap exceeded while enumerating words");
      if (next.empty()) continue;
      word.push_back(a);
      stack.push_back({std::move(next), 0});
    }
  }
}

}  // namespace pdaed
