#include "pdaed/ted.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "pdaed/detail/pushdown_system.hpp"
#include "pdaed/errors.hpp"

namespace pdaed {

std::string ImpactVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += values[i] == kHash ? std::string("#") : std::to_string(values[i]);
  }
  return out + ")";
}

std::uint64_t capped_threshold(const Natural& t) {
  if (t < 0) throw PreconditionError("threshold must be nonnegative");
  if (t >= Natural(kThresholdCap)) return kThresholdCap;
  return static_cast<std::uint64_t>(t);
}

namespace {

std::uint64_t cap(Distance d, std::uint64_t t) {
  return (d.is_infinite() || d.value() > t) ? ImpactVector::kHash : d.value();
}

Distance as_distance(std::uint64_t v) { return v == ImpactVector::kHash ? Distance::infinity() : Distance(v); }

std::vector<std::uint64_t> initial_values(const EditCostTable& table, std::uint64_t t) {
  const auto d = initial_distances(table);
  std::vector<std::uint64_t> out(d.size());
  for (std::size_t s = 0; s < d.size(); ++s) out[s] = cap(d[s], t);
  return out;
}

std::vector<std::uint64_t> step_values(const std::vector<std::uint64_t>& lambda, Letter a, const EditCostTable& table,
                                       std::uint64_t t) {
  const std::size_t n = table.num_states();
  const auto& m = table.matrix(a);
  std::vector<std::uint64_t> out(n, ImpactVector::kHash);
  for (State s = 0; s < n; ++s) {
    Distance best = Distance::infinity();
    for (State prev = 0; prev < n; ++prev) {
      if (lambda[prev] != ImpactVector::kHash) best = std::min(best, as_distance(lambda[prev]) + m[s * n + prev]);
    }
    out[s] = cap(best, t);
  }
  return out;
}

bool final_values(const std::vector<std::uint64_t>& lambda, const StateSet& finals) {
  for (State f : finals) {
    if (lambda[f] != ImpactVector::kHash) return false;
  }
  return true;
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Interned impact vectors with memoized steps.
class VectorPool {
 public:
  VectorPool(const EditCostTable& table, std::uint64_t t) : table_(table), t_(t) {}

  std::uint32_t intern(std::vector<std::uint64_t> v) {
    auto [it, inserted] = ids_.try_emplace(v, static_cast<std::uint32_t>(vectors_.size()));
    if (inserted) vectors_.push_back(std::move(v));
    return it->second;
  }

  std::uint32_t initial() { return intern(initial_values(table_, t_)); }

  std::uint32_t step(std::uint32_t id, Letter a) {
    const std::uint64_t key = (static_cast<std::uint64_t>(id) << 32) | a;
    if (auto it = steps_.find(key); it != steps_.end()) return it->second;
    const std::uint32_t next = intern(step_values(vectors_[id], a, table_, t_));
    steps_.emplace(key, next);
    return next;
  }

  const std::vector<std::uint64_t>& operator[](std::uint32_t id) const { return vectors_[id]; }
  std::size_t size() const { return vectors_.size(); }

 private:
  const EditCostTable& table_;
  std::uint64_t t_;
  std::vector<std::vector<std::uint64_t>> vectors_;
  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VectorHash> ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> steps_;
};

void check_state_bound(std::size_t explored, const Pda& pda, const Nfa& nfa, const Natural& t) {
  if (Natural(explored) > impact_state_bound(pda, nfa, t)) {
    throw std::logic_error("impact state count exceeds |Q_P| * (t + 2)^|Q_N|");
  }
}

using detail::Control;
using detail::PdsRule;
using detail::Symbol;

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct TripleHash {
  std::size_t operator()(const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>& k) const noexcept {
    const auto [a, b, c] = k;
    std::uint64_t h = (static_cast<std::uint64_t>(a) << 32) ^ b;
    h = h * 0x9e3779b97f4a7c15ULL ^ c;
    return std::hash<std::uint64_t>{}(h);
  }
};

// Forward summary tabulation on the product of the normalized pushdown
// system with the vector pool. A fact (entry, control, symbol) states that
// from the entry's configuration the product reaches `control` with `symbol`
// in the entry symbol's stack cell, without popping below it.
class ImpactSearch {
 public:
  ImpactSearch(const Pda& pda, const Nfa& nfa, std::uint64_t t, const TedOptions& options)
      : pda_(pda),
        nfa_(nfa),
        table_(nfa),
        pool_(table_, t),
        encoding_(detail::encode_pda(pda)),
        system_(encoding_.system),
        options_(options) {
    for (std::uint32_t r = 0; r < system_.rules.size(); ++r) {
      const auto& rule = system_.rules[r];
      by_head_[head_key(rule.from, rule.top)].push_back(r);
    }
  }

  TedResult run() {
    TedResult result;
    const std::uint32_t lambda0 = pool_.initial();
    for (Control c : system_.initials) {
      entry(product(c, lambda0), system_.bottom);
    }
    while (!worklist_.empty() && !goal_) {
      const std::uint32_t f = worklist_.back();
      worklist_.pop_back();
      process(f);
    }
    result.within = !goal_.has_value();
    if (goal_) result.counterexample = reconstruct(*goal_);
    result.explored_states = explored_;
    result.summary_facts = facts_.size();
    return result;
  }


 private:
  enum class Origin : std::uint8_t { entry, swap, ret };

  struct Fact {
    std::uint32_t entry;
    std::uint32_t pc;
    Symbol symbol;
    Origin origin;
    std::uint32_t parent = kNone;     // swap: predecessor; ret: caller fact
    std::uint32_t rule = kNone;       // swap: swap rule; ret: push rule
    std::uint32_t callee = kNone;     // ret: callee fact before its pop
    std::uint32_t pop_rule = kNone;   // ret
  };
  struct Caller {
    std::uint32_t fact;
    std::uint32_t rule;
  };
  struct Exit {
    std::uint32_t pc;
    std::uint32_t fact;
    std::uint32_t rule;
  };
  struct Entry {
    std::uint32_t pc;
    Symbol symbol;
    std::vector<Caller> callers;
    std::vector<Exit> exits;
    std::unordered_set<std::uint32_t> exit_targets;
  };
  struct Goal {
    std::uint32_t fact;
    std::uint32_t rule;
  };

  std::uint64_t head_key(Control c, Symbol s) const { return static_cast<std::uint64_t>(c) * system_.num_symbols + s; }

  std::uint32_t product(Control c, std::uint32_t lambda) {
    const std::uint64_t key = (static_cast<std::uint64_t>(c) << 32) | lambda;
    auto [it, inserted] = products_.try_emplace(key, static_cast<std::uint32_t>(pc_control_.size()));
    if (inserted) {
      pc_control_.push_back(c);
      pc_vector_.push_back(lambda);
      if (c < pda_.num_states()) ++explored_;
      if (options_.max_states != 0 && pc_control_.size() > options_.max_states) {
        throw BudgetExceeded("impact exploration exceeded " + std::to_string(options_.max_states) + " states");
      }
    }
    return it->second;
  }

  std::uint32_t entry(std::uint32_t pc, Symbol s) {
    const std::uint64_t key = (static_cast<std::uint64_t>(pc) << 32) | s;
    auto [it, inserted] = entries_.try_emplace(key, static_cast<std::uint32_t>(entry_data_.size()));
    if (inserted) {
      entry_data_.push_back(Entry{pc, s, {}, {}, {}});
      add_fact(Fact{it->second, pc, s, Origin::entry});
    }
    return it->second;
  }

  void add_fact(const Fact& fact) {
    auto [it, inserted] =
        fact_index_.try_emplace({fact.entry, fact.pc, fact.symbol}, static_cast<std::uint32_t>(facts_.size()));
    if (!inserted) return;
    facts_.push_back(fact);
    worklist_.push_back(it->second);
  }

  void process(std::uint32_t id) {
    const Fact fact = facts_[id];
    const Control c = pc_control_[fact.pc];
    const std::uint32_t lambda = pc_vector_[fact.pc];
    auto it = by_head_.find(head_key(c, fact.symbol));
    if (it == by_head_.end()) return;
    for (std::uint32_t r : it->second) {
      const PdsRule& rule = system_.rules[r];
      const std::uint32_t next_lambda = rule.letter ? pool_.step(lambda, *rule.letter) : lambda;
      if (rule.push_length == 0) {
        if (rule.to == system_.accept) {
          // Only initial entries carry the bottom symbol, which final states pop.
          if (final_values(pool_[lambda], nfa_.finals())) {
            goal_ = Goal{id, r};
            return;
          }
          continue;
        }
        const std::uint32_t target = product(rule.to, next_lambda);
        Entry& e = entry_data_[fact.entry];
        if (!e.exit_targets.insert(target).second) continue;
        e.exits.push_back(Exit{target, id, r});
        const auto callers = e.callers;
        for (const auto& caller : callers) {
          const Fact& p = facts_[caller.fact];
          add_fact(Fact{p.entry, target, system_.rules[caller.rule].push[0], Origin::ret, caller.fact, caller.rule, id,
                        r});
        }
      } else if (rule.push_length == 1) {
        add_fact(Fact{fact.entry, product(rule.to, next_lambda), rule.push[0], Origin::swap, id, r});
      } else {
        const std::uint32_t callee = entry(product(rule.to, next_lambda), rule.push[1]);
        entry_data_[callee].callers.push_back(Caller{id, r});
        const auto exits = entry_data_[callee].exits;
        for (const auto& exit : exits) {
          add_fact(Fact{fact.entry, exit.pc, rule.push[0], Origin::ret, id, r, exit.fact, exit.rule});
        }
      }
    }
  }

  Word reconstruct(const Goal& goal) const {
    // Tasks: fact ids, or letters tagged with the high bit.
    constexpr std::uint64_t kLetterTag = std::uint64_t{1} << 63;
    Word word;
    std::vector<std::uint64_t> tasks;
    auto push_letter = [&](std::uint32_t rule) {
      if (rule != kNone && system_.rules[rule].letter) tasks.push_back(kLetterTag | *system_.rules[rule].letter);
    };
    push_letter(goal.rule);
    tasks.push_back(goal.fact);
    while (!tasks.empty()) {
      const std::uint64_t task = tasks.back();
      tasks.pop_back();
      if (task & kLetterTag) {
        word.push_back(static_cast<Letter>(task & ~kLetterTag));
        continue;
      }
      const Fact& f = facts_[task];
      if (f.origin == Origin::swap) {
        push_letter(f.rule);
        tasks.push_back(f.parent);
      } else if (f.origin == Origin::ret) {
        push_letter(f.pop_rule);
        tasks.push_back(f.callee);
        push_letter(f.rule);
        tasks.push_back(f.parent);
      }
    }
    return word;
  }

  const Pda& pda_;
  const Nfa& nfa_;
  EditCostTable table_;
  VectorPool pool_;
  detail::PdaEncoding encoding_;
  const detail::PushdownSystem& system_;
  TedOptions options_;

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_head_;
  std::unordered_map<std::uint64_t, std::uint32_t> products_;
  std::vector<Control> pc_control_;
  std::vector<std::uint32_t> pc_vector_;
  std::unordered_map<std::uint64_t, std::uint32_t> entries_;
  std::vector<Entry> entry_data_;
  std::unordered_map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t, TripleHash> fact_index_;
  std::vector<Fact> facts_;
  std::vector<std::uint32_t> worklist_;
  std::optional<Goal> goal_;
  std::size_t explored_ = 0;
};

}  // namespace

ImpactVector impact_initial(const Nfa& nfa, const EditCostTable& table, const Natural& t) {
  if (table.num_states() != nfa.num_states()) throw PreconditionError("cost table does not match the automaton");
  return ImpactVector{initial_values(table, capped_threshold(t))};
}

ImpactVector impact_step(const ImpactVector& lambda, Letter a, const EditCostTable& table, const Natural& t) {
  if (lambda.values.size() != table.num_states()) throw PreconditionError("vector does not match the cost table");
  return ImpactVector{step_values(lambda.values, a, table, capped_threshold(t))};
}

bool impact_is_final(const ImpactVector& lambda, const Nfa& nfa) { return final_values(lambda.values, nfa.finals()); }

Natural impact_state_bound(const Pda& pda, const Nfa& nfa, const Natural& t) {
  Natural bound = pda.num_states();
  const Natural base = t + 2;
  for (std::size_t i = 0; i < nfa.num_states(); ++i) bound *= base;
  return bound;
}

TedResult ted_decide(const Pda& pda, const Nfa& nfa, const Natural& t, const TedOptions& options) {
  // States that are unreachable or cannot reach a final state never affect
  // the distance to the language.
  const Nfa useful = trim(nfa);
  ImpactSearch search(pda, useful, capped_threshold(t), options);
  TedResult result = search.run();
  check_state_bound(result.explored_states, pda, nfa, t);
  return result;
}

TedResult inclusion(const Pda& pda, const Nfa& nfa, const TedOptions& options) {
  return ted_decide(pda, nfa, 0, options);
}

ImpactAutomaton build_impact_automaton(const Pda& pda, const Nfa& nfa, const Natural& t, std::size_t max_states) {
  const EditCostTable table(nfa);
  VectorPool pool(table, capped_threshold(t));
  std::unordered_map<std::uint64_t, State> index;
  std::vector<State> pda_state;
  std::vector<std::uint32_t> vector_id;
  std::deque<State> queue;
  auto state = [&](State q, std::uint32_t lambda) {
    const std::uint64_t key = (static_cast<std::uint64_t>(q) << 32) | lambda;
    auto [it, inserted] = index.try_emplace(key, static_cast<State>(pda_state.size()));
    if (inserted) {
      pda_state.push_back(q);
      vector_id.push_back(lambda);
      queue.push_back(it->second);
      if (max_states != 0 && pda_state.size() > max_states) {
        throw BudgetExceeded("impact automaton exceeded " + std::to_string(max_states) + " states");
      }
    }
    return it->second;
  };
  StateSet initials;
  const std::uint32_t lambda0 = pool.initial();
  for (State s : pda.initials()) initials.insert(state(s, lambda0));
  std::vector<PdaTransition> transitions;
  while (!queue.empty()) {
    const State from = queue.front();
    queue.pop_front();
    for (const auto& tr : pda.outgoing(pda_state[from])) {
      const State to = state(tr.to, pool.step(vector_id[from], tr.letter));
      transitions.push_back({from, tr.letter, tr.top, to, tr.push});
    }
  }
  StateSet finals;
  std::vector<std::string> names;
  ImpactAutomaton out;
  for (State s = 0; s < pda_state.size(); ++s) {
    ImpactVector v{pool[vector_id[s]]};
    if (pda.is_final(pda_state[s]) && impact_is_final(v, nfa)) finals.insert(s);
    const auto& base = pda.state_names();
    names.push_back((pda_state[s] < base.size() ? base[pda_state[s]] : std::to_string(pda_state[s])) + v.to_string());
    out.vectors.push_back(std::move(v));
  }
  check_state_bound(pda_state.size(), pda, nfa, t);
  out.pda_state = pda_state;
  out.pda = Pda(pda.alphabet(), pda.stack_alphabet(), pda_state.size(), std::move(initials), std::move(finals),
                std::move(transitions), std::move(names));
  return out;
}

}  // namespace pdaed
