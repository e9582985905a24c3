#include "pdaed/detail/pushdown_system.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

namespace pdaed::detail {

void append_normalized_rule(std::vector<PdsRule>& rules, Control from, Symbol top, Control to,
                            const std::vector<Symbol>& push, std::optional<Letter> letter, Control& fresh) {
  const std::size_t m = push.size();
  if (m <= 2) {
    PdsRule rule;
    rule.from = from;
    rule.top = top;
    rule.to = to;
    rule.push_length = static_cast<std::uint8_t>(m);
    for (std::size_t i = 0; i < m; ++i) rule.push[i] = push[i];
    rule.letter = letter;
    rules.push_back(rule);
    return;
  }
  // Push p0..p{m-1} one symbol at a time through m-2 fresh locations; only the
  // first rule reads the letter.
  const Control first_fresh = fresh;
  fresh += static_cast<Control>(m - 2);
  auto location = [&](std::size_t i) { return first_fresh + static_cast<Control>(i - 1); };

  PdsRule head;
  head.from = from;
  head.top = top;
  head.to = location(1);
  head.push_length = 2;
  head.push[0] = push[0];
  head.push[1] = push[1];
  head.letter = letter;
  rules.push_back(head);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    PdsRule link;
    link.from = location(i);
    link.top = push[i];
    link.to = (i + 2 == m) ? to : location(i + 1);
    link.push_length = 2;
    link.push[0] = push[i];
    link.push[1] = push[i + 1];
    rules.push_back(link);
  }
}

PdaEncoding encode_pda(const Pda& pda) {
  PdaEncoding encoding;
  auto& system = encoding.system;
  encoding.symbols.assign(pda.stack_alphabet().begin(), pda.stack_alphabet().end());
  std::map<StackSymbol, Symbol> index;
  for (Symbol i = 0; i < encoding.symbols.size(); ++i) index[encoding.symbols[i]] = i;

  system.num_symbols = static_cast<Symbol>(encoding.symbols.size() + 1);
  system.bottom = static_cast<Symbol>(encoding.symbols.size());
  system.accept = static_cast<Control>(pda.num_states());
  Control fresh = system.accept + 1;

  for (const auto& t : pda.transitions()) {
    std::vector<Symbol> push;
    Symbol top = 0;
    if (t.top == kBottom) {
      top = system.bottom;
      push.push_back(system.bottom);
    } else {
      top = index.at(t.top);
    }
    for (StackSymbol s : t.push) push.push_back(index.at(s));
    const auto before = static_cast<std::uint32_t>(system.rules.size());
    append_normalized_rule(system.rules, t.from, top, t.to, push, t.letter, fresh);
    std::vector<std::uint32_t> produced;
    for (auto r = before; r < system.rules.size(); ++r) produced.push_back(r);
    encoding.rules_of_transition.push_back(std::move(produced));
  }
  for (State f : pda.finals()) {
    PdsRule pop;
    pop.from = f;
    pop.top = system.bottom;
    pop.to = system.accept;
    pop.push_length = 0;
    system.rules.push_back(pop);
  }
  system.initials.assign(pda.initials().begin(), pda.initials().end());
  system.num_controls = fresh;
  return encoding;
}

namespace {

constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Item {
  Control from;
  Symbol symbol;
  Control to;
  std::uint64_t cost = kUnset;
  bool done = false;
  std::uint32_t rule = kNone;
  Control split = 0;
};

class Saturation {
 public:
  explicit Saturation(const PushdownSystem& system) : system_(system) {
    for (std::uint32_t r = 0; r < system_.rules.size(); ++r) {
      const auto& rule = system_.rules[r];
      if (rule.push_length == 1) {
        by_callee_head_[head_key(rule.to, rule.push[0])].push_back(r);
      } else if (rule.push_length == 2) {
        by_callee_head_[head_key(rule.to, rule.push[1])].push_back(r);
        by_lower_symbol_[rule.push[0]].push_back(r);
      }
    }
    for (Control c : system_.initials) goals_.insert(item_key(c, system_.bottom, system_.accept));
  }

  SaturationResult run() {
    for (std::uint32_t r = 0; r < system_.rules.size(); ++r) {
      const auto& rule = system_.rules[r];
      if (rule.push_length == 0) relax(rule.from, rule.top, rule.to, weight(rule), r, 0);
    }
    SaturationResult result;
    while (!queue_.empty()) {
      const auto [cost, id] = queue_.top();
      queue_.pop();
      Item& item = items_[id];
      if (item.done || item.cost != cost) continue;
      item.done = true;
      finished_[head_key(item.from, item.symbol)].emplace_back(item.to, id);
      if (goals_.count(item_key(item.from, item.symbol, item.to)) != 0) {
        result.reachable = true;
        result.witness = reconstruct(id);
        break;
      }
      propagate(id);
    }
    result.items = items_.size();
    return result;
  }

 private:
  static std::uint64_t weight(const PdsRule& rule) { return rule.letter ? 1 : 0; }

  std::uint64_t head_key(Control c, Symbol s) const {
    return static_cast<std::uint64_t>(c) * system_.num_symbols + s;
  }
  std::uint64_t item_key(Control x, Symbol s, Control y) const {
    return head_key(x, s) * system_.num_controls + y;
  }

  void relax(Control x, Symbol s, Control y, std::uint64_t cost, std::uint32_t rule, Control split) {
    const auto key = item_key(x, s, y);
    auto [it, inserted] = index_.try_emplace(key, static_cast<std::uint32_t>(items_.size()));
    if (inserted) items_.push_back(Item{x, s, y});
    Item& item = items_[it->second];
    if (item.done || cost >= item.cost) return;
    item.cost = cost;
    item.rule = rule;
    item.split = split;
    queue_.emplace(cost, it->second);
  }

  const Item* finished(Control x, Symbol s, Control y) const {
    auto it = index_.find(item_key(x, s, y));
    if (it == index_.end() || !items_[it->second].done) return nullptr;
    return &items_[it->second];
  }

  void propagate(std::uint32_t id) {
    const Item item = items_[id];
    if (auto it = by_callee_head_.find(head_key(item.from, item.symbol)); it != by_callee_head_.end()) {
      for (std::uint32_t r : it->second) {
        const auto& rule = system_.rules[r];
        if (rule.push_length == 1) {
          relax(rule.from, rule.top, item.to, weight(rule) + item.cost, r, 0);
        } else if (auto lower = finished_.find(head_key(item.to, rule.push[0])); lower != finished_.end()) {
          for (const auto& [y, lower_id] : lower->second) {
            relax(rule.from, rule.top, y, weight(rule) + item.cost + items_[lower_id].cost, r, item.to);
          }
        }
      }
    }
    if (auto it = by_lower_symbol_.find(item.symbol); it != by_lower_symbol_.end()) {
      for (std::uint32_t r : it->second) {
        const auto& rule = system_.rules[r];
        // The item pops the lower symbol from `item.from`; the upper part must
        // have brought the callee from (rule.to, push[1]) to item.from.
        if (const Item* upper = finished(rule.to, rule.push[1], item.from)) {
          relax(rule.from, rule.top, item.to, weight(rule) + upper->cost + item.cost, r, item.from);
        }
      }
    }
  }

  Word reconstruct(std::uint32_t root) const {
    Word word;
    std::vector<std::uint32_t> pending{root};
    while (!pending.empty()) {
      const Item& item = items_[pending.back()];
      pending.pop_back();
      const auto& rule = system_.rules[item.rule];
      if (rule.letter) word.push_back(*rule.letter);
      if (rule.push_length == 1) {
        pending.push_back(index_.at(item_key(rule.to, rule.push[0], item.to)));
      } else if (rule.push_length == 2) {
        // Upper part first, so push the lower part below it.
        pending.push_back(index_.at(item_key(item.split, rule.push[0], item.to)));
        pending.push_back(index_.at(item_key(rule.to, rule.push[1], item.split)));
      }
    }
    return word;
  }

  const PushdownSystem& system_;
  std::vector<Item> items_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_callee_head_;
  std::unordered_map<Symbol, std::vector<std::uint32_t>> by_lower_symbol_;
  std::unordered_map<std::uint64_t, std::vector<std::pair<Control, std::uint32_t>>> finished_;
  std::set<std::uint64_t> goals_;
  std::priority_queue<std::pair<std::uint64_t, std::uint32_t>, std::vector<std::pair<std::uint64_t, std::uint32_t>>,
                      std::greater<>>
      queue_;
};

}  // namespace

SaturationResult saturate(const PushdownSystem& system) { return Saturation(system).run(); }

}  // namespace pdaed::detail
