#include "pdaed/fed.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "pdaed/errors.hpp"
#include "pdaed/text.hpp"
#include "pdaed/word_distance.hpp"

namespace pdaed {

BoundReport fed_bound(std::size_t nonterminals, std::size_t safety_states) {
  if (nonterminals == 0) throw PreconditionError("a grammar has at least one nonterminal");
  BoundReport report;
  report.nonterminals = nonterminals;
  report.safety_states = safety_states;
  const Natural power = Natural(1) << nonterminals;
  report.bound = (2 * power - 2) * safety_states + power;
  return report;
}

BoundReport fed_bound(const Cfg& grammar, const Nfa& safety) {
  if (!is_safety(safety)) throw PreconditionError("bound requires a safety automaton");
  return fed_bound(grammar.num_nonterminals(), safety.num_states());
}

const char* to_string(Finiteness f) {
  switch (f) {
    case Finiteness::finite:
      return "finite";
    case Finiteness::infinite:
      return "infinite";
    case Finiteness::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

FedVerdict fed_decide(const Pda& pda, const Nfa& nfa, const FedOptions& options) {
  FedVerdict verdict;
  const Nfa safety = prefix_closure(nfa);
  const Cfg grammar = options.grammar ? *options.grammar : pda_to_cfg(pda);
  verdict.bound = fed_bound(grammar, safety);
  verdict.bound.adjustment = nfa.size();

  const auto emptiness = pda_emptiness(pda);
  if (emptiness.empty) {
    verdict.verdict = Finiteness::finite;
    verdict.safety_at_most = 0;
    return verdict;
  }
  if (safety.num_states() == 0) {
    verdict.verdict = Finiteness::infinite;
    verdict.counterexample = emptiness.witness;
    return verdict;
  }

  Natural limit = verdict.bound.bound;
  bool truncated = false;
  if (options.max_bound && limit > *options.max_bound) {
    if (!options.best_effort) {
      throw BudgetExceeded("bound B = " + limit.str() + " exceeds the configured maximum " + options.max_bound->str());
    }
    limit = *options.max_bound;
    truncated = true;
  }
  // Thresholds 0, 1, 3, 7, ... and finally the limit itself; any threshold
  // that holds proves finiteness.
  for (Natural t = 0;; t = 2 * t + 1) {
    const Natural probe = t < limit ? t : limit;
    const TedResult r = ted_decide(pda, safety, probe, options.ted);
    ++verdict.probes;
    verdict.explored_states += r.explored_states;
    if (r.within) {
      verdict.verdict = Finiteness::finite;
      verdict.safety_at_most = probe;
      verdict.counterexample.reset();
      return verdict;
    }
    verdict.safety_exceeds = probe;
    verdict.counterexample = r.counterexample;
    if (probe == limit) break;
  }
  verdict.verdict = truncated ? Finiteness::undetermined : Finiteness::infinite;
  return verdict;
}

ThresholdDecision threshold_decide(const Pda& pda, const Nfa& nfa, const Natural& t, const FedOptions& options) {
  ThresholdDecision decision;
  const Cfg grammar = options.grammar ? *options.grammar : pda_to_cfg(pda);
  const Natural ceiling = fed_bound(grammar, prefix_closure(nfa)).bound + nfa.size();
  if (t < ceiling) {
    decision.result = ted_decide(pda, nfa, t, options.ted);
    return decision;
  }
  FedOptions reuse = options;
  reuse.grammar = grammar;
  decision.fed = fed_decide(pda, nfa, reuse);
  decision.result.within = decision.fed->verdict == Finiteness::finite;
  decision.result.explored_states = decision.fed->explored_states;
  if (decision.fed->verdict == Finiteness::undetermined) {
    throw BudgetExceeded("the finiteness check was inconclusive within the configured bound");
  }
  return decision;
}

DistanceReport edit_distance_compute(const Pda& pda, const Nfa& nfa, const FedOptions& options) {
  DistanceReport report;
  report.fed = fed_decide(pda, nfa, options);
  report.probes = report.fed.probes;
  report.explored_states = report.fed.explored_states;
  if (report.fed.verdict != Finiteness::finite) {
    report.witness = report.fed.counterexample;
    return report;
  }

  std::map<Natural, Word> counterexamples;
  auto probe = [&](const Natural& t) {
    TedResult r = ted_decide(pda, nfa, t, options.ted);
    ++report.probes;
    report.explored_states += r.explored_states;
    if (!r.within) counterexamples[t] = *r.counterexample;
    return r.within;
  };

  // The distance to L(nfa) is at least the distance to its prefix closure
  // and at most that plus the size of the automaton.
  Natural lo = report.fed.safety_exceeds ? *report.fed.safety_exceeds + 1 : Natural(0);
  Natural hi = *report.fed.safety_at_most + report.fed.bound.adjustment;
  const Natural ceiling = report.fed.bound.bound + report.fed.bound.adjustment;
  if (hi > ceiling) hi = ceiling;
  if (!probe(hi)) throw std::logic_error("finite distance exceeds its bound");
  while (lo < hi) {
    const Natural mid = (lo + hi) / 2;
    if (probe(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  report.value = Distance(static_cast<std::uint64_t>(lo));
  if (lo > 0) {
    const Natural below = lo - 1;
    if (counterexamples.count(below) == 0 && probe(below)) {
      throw std::logic_error("threshold answers are not monotone");
    }
    report.witness = counterexamples.at(below);
  }
  return report;
}

std::optional<CompactDecomposition> infinite_witness(const Pda& pda, const Nfa& nfa,
                                                     const InfiniteWitnessOptions& options) {
  const FedVerdict verdict = fed_decide(pda, nfa, options.fed);
  if (verdict.verdict == Finiteness::finite) throw PreconditionError("the edit distance is finite");
  const Cfg grammar = options.fed.grammar ? *options.fed.grammar : pda_to_cfg(pda);
  const Nfa safety = prefix_closure(nfa);
  std::optional<CompactDecomposition> found;
  for_each_accepted_word(pda, options.max_word_length, [&](const Word& w) {
    CompactDecomposition d = compact_decomposition(grammar, w);
    if (nested_reach_empty(d.pumps, safety)) {
      found = std::move(d);
      return false;
    }
    return true;
  });
  return found;
}

namespace {

std::string unused_name(const std::vector<std::string>& names, std::size_t count, std::string base) {
  std::set<std::string> taken(names.begin(), names.end());
  for (std::size_t i = 0; i < count; ++i) taken.insert(std::to_string(i));
  while (taken.count(base) != 0) base += "'";
  return base;
}

std::vector<std::string> named(const std::vector<std::string>& names, std::size_t count) {
  if (!names.empty()) return names;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

Nfa hat_closure(const Nfa& nfa, Letter marker) {
  if (nfa.alphabet().count(marker) != 0) {
    throw ValidationError("marker '" + to_utf8(marker) + "' already belongs to the alphabet");
  }
  Alphabet alphabet = nfa.alphabet();
  alphabet.insert(marker);
  const auto n = static_cast<State>(nfa.num_states());
  const State hat = n;
  const State end = n + 1;
  std::vector<NfaTransition> transitions = nfa.transitions();
  for (State s : nfa.initials()) transitions.push_back({hat, marker, s});
  transitions.push_back({hat, marker, end});
  for (State f : nfa.finals()) {
    for (State s : nfa.initials()) transitions.push_back({f, marker, s});
    transitions.push_back({f, marker, end});
  }
  auto names = named(nfa.state_names(), n);
  names.push_back(unused_name(names, n, "hat"));
  names.push_back(unused_name(names, n, "end"));
  return Nfa(std::move(alphabet), n + 2, {hat}, {end}, std::move(transitions), std::move(names));
}

Pda hat_closure(const Pda& pda, Letter marker) {
  if (pda.alphabet().count(marker) != 0) {
    throw ValidationError("marker '" + to_utf8(marker) + "' already belongs to the alphabet");
  }
  Alphabet alphabet = pda.alphabet();
  alphabet.insert(marker);
  const auto n = static_cast<State>(pda.num_states());
  const State hat = n;
  const State end = n + 1;
  std::vector<PdaTransition> transitions = pda.transitions();
  for (State s : pda.initials()) transitions.push_back({hat, marker, kBottom, s, U""});
  transitions.push_back({hat, marker, kBottom, end, U""});
  for (State f : pda.finals()) {
    for (State s : pda.initials()) transitions.push_back({f, marker, kBottom, s, U""});
    transitions.push_back({f, marker, kBottom, end, U""});
  }
  auto names = named(pda.state_names(), n);
  names.push_back(unused_name(names, n, "hat"));
  names.push_back(unused_name(names, n, "end"));
  return Pda(std::move(alphabet), pda.stack_alphabet(), n + 2, {hat}, {end}, std::move(transitions),
             std::move(names));
}

}  // namespace pdaed
