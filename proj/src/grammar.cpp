#include "pdaed/grammar.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "pdaed/detail/pushdown_system.hpp"
#include "pdaed/errors.hpp"
#include "pdaed/text.hpp"

namespace pdaed {

void Grammar::validate() const {
  if (nonterminals.empty()) throw ValidationError("grammar has no nonterminals");
  if (start >= nonterminals.size()) throw ValidationError("start symbol out of range");
  std::set<std::string> seen;
  for (const auto& name : nonterminals) {
    if (name.empty()) throw ValidationError("empty nonterminal name");
    if (!seen.insert(name).second) throw ValidationError("duplicate nonterminal '" + name + "'");
  }
  for (const auto& p : productions) {
    if (p.lhs >= nonterminals.size()) throw ValidationError("production left-hand side out of range");
    for (const auto& s : p.rhs) {
      if (s.terminal && alphabet.count(static_cast<Letter>(s.value)) == 0) {
        throw ValidationError("production letter '" + to_utf8(static_cast<Letter>(s.value)) + "' not in alphabet");
      }
      if (!s.terminal && s.value >= nonterminals.size()) throw ValidationError("production symbol out of range");
    }
  }
}

Cfg::Cfg(Alphabet alphabet, std::vector<std::string> names, Nonterminal start, std::vector<CnfProduction> productions)
    : alphabet_(std::move(alphabet)), names_(std::move(names)), start_(start), productions_(std::move(productions)) {
  if (names_.empty()) throw ValidationError("grammar has no nonterminals");
  if (start_ >= names_.size()) throw ValidationError("start symbol out of range");
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty() || !seen.insert(name).second) throw ValidationError("nonterminal names must be nonempty and distinct");
  }
  const auto n = static_cast<Nonterminal>(names_.size());
  bool start_on_rhs = false;
  for (const auto& p : productions_) {
    if (p.lhs >= n) throw ValidationError("production left-hand side out of range");
    switch (p.kind) {
      case CnfProduction::Kind::binary:
        if (p.left >= n || p.right >= n) throw ValidationError("production symbol out of range");
        start_on_rhs = start_on_rhs || p.left == start_ || p.right == start_;
        break;
      case CnfProduction::Kind::terminal:
        if (alphabet_.count(p.letter) == 0) {
          throw ValidationError("production letter '" + to_utf8(p.letter) + "' not in alphabet");
        }
        break;
      case CnfProduction::Kind::empty:
        if (p.lhs != start_) throw ValidationError("only the start symbol may derive the empty word");
        has_empty_ = true;
        break;
    }
  }
  if (has_empty_ && start_on_rhs) {
    throw ValidationError("the start symbol derives the empty word and occurs on a right-hand side");
  }
}

Grammar to_grammar(const Cfg& cfg) {
  Grammar g;
  g.alphabet = cfg.alphabet();
  g.nonterminals = cfg.names();
  g.start = cfg.start();
  for (const auto& p : cfg.productions()) {
    GrammarProduction out{p.lhs, {}};
    if (p.kind == CnfProduction::Kind::binary) {
      out.rhs = {GrammarSymbol::variable(p.left), GrammarSymbol::variable(p.right)};
    } else if (p.kind == CnfProduction::Kind::terminal) {
      out.rhs = {GrammarSymbol::letter(p.letter)};
    }
    g.productions.push_back(std::move(out));
  }
  return g;
}

namespace {

using Rhs = std::vector<GrammarSymbol>;

// Mutable working grammar for the normal-form pipeline.
class Workbench {
 public:
  explicit Workbench(const Grammar& g) : alphabet_(g.alphabet), names_(g.nonterminals), start_(g.start) {
    for (const auto& name : names_) used_.insert(name);
    for (Letter a : alphabet_) used_.insert(to_utf8(a));
    for (const auto& p : g.productions) rules_.insert({p.lhs, p.rhs});
  }

  Nonterminal fresh(const std::string& base) {
    std::string name = base;
    for (std::size_t i = 1; used_.count(name) != 0; ++i) name = base + "_" + std::to_string(i);
    used_.insert(name);
    names_.push_back(name);
    return static_cast<Nonterminal>(names_.size() - 1);
  }

  std::size_t size() const { return names_.size(); }

  void remove_useless() {
    std::vector<bool> productive(size(), false);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [lhs, rhs] : rules_) {
        if (productive[lhs]) continue;
        if (std::all_of(rhs.begin(), rhs.end(), [&](const GrammarSymbol& s) { return s.terminal || productive[s.value]; })) {
          productive[lhs] = true;
          changed = true;
        }
      }
    }
    std::set<std::pair<Nonterminal, Rhs>> kept;
    for (const auto& rule : rules_) {
      const auto& [lhs, rhs] = rule;
      if (productive[lhs] &&
          std::all_of(rhs.begin(), rhs.end(), [&](const GrammarSymbol& s) { return s.terminal || productive[s.value]; })) {
        kept.insert(rule);
      }
    }
    std::vector<bool> reachable(size(), false);
    std::vector<Nonterminal> stack;
    if (productive[start_]) {
      reachable[start_] = true;
      stack.push_back(start_);
    }
    auto by_lhs = index(kept);
    while (!stack.empty()) {
      const Nonterminal v = stack.back();
      stack.pop_back();
      for (const Rhs* rhs : by_lhs[v]) {
        for (const auto& s : *rhs) {
          if (!s.terminal && !reachable[s.value]) {
            reachable[s.value] = true;
            stack.push_back(s.value);
          }
        }
      }
    }
    rules_.clear();
    for (const auto& rule : kept) {
      if (reachable[rule.first]) rules_.insert(rule);
    }
  }

  bool empty_language() const {
    return std::none_of(rules_.begin(), rules_.end(), [&](const auto& r) { return r.first == start_; });
  }

  // Terminals inside right-hand sides of length >= 2 become helper nonterminals.
  void separate_terminals() {
    std::map<Letter, Nonterminal> helper;
    std::set<std::pair<Nonterminal, Rhs>> out;
    for (auto [lhs, rhs] : rules_) {
      if (rhs.size() >= 2) {
        for (auto& s : rhs) {
          if (!s.terminal) continue;
          const auto a = static_cast<Letter>(s.value);
          auto it = helper.find(a);
          if (it == helper.end()) {
            it = helper.emplace(a, fresh("T_" + to_utf8(a))).first;
            out.insert({it->second, {GrammarSymbol::letter(a)}});
          }
          s = GrammarSymbol::variable(it->second);
        }
      }
      out.insert({lhs, std::move(rhs)});
    }
    rules_ = std::move(out);
  }

  // Long right-hand sides are split right-to-left; equal suffixes share one
  // nonterminal.
  void binarize() {
    std::map<Rhs, Nonterminal> suffix;
    std::set<std::pair<Nonterminal, Rhs>> out;
    std::function<Nonterminal(const Rhs&)> name_suffix = [&](const Rhs& seq) -> Nonterminal {
      if (auto it = suffix.find(seq); it != suffix.end()) return it->second;
      const Nonterminal v = fresh("N");
      suffix.emplace(seq, v);
      if (seq.size() == 2) {
        out.insert({v, seq});
      } else {
        out.insert({v, {seq[0], GrammarSymbol::variable(name_suffix(Rhs(seq.begin() + 1, seq.end())))}});
      }
      return v;
    };
    for (const auto& [lhs, rhs] : rules_) {
      if (rhs.size() <= 2) {
        out.insert({lhs, rhs});
      } else {
        out.insert({lhs, {rhs[0], GrammarSymbol::variable(name_suffix(Rhs(rhs.begin() + 1, rhs.end())))}});
      }
    }
    rules_ = std::move(out);
  }

  // Removes epsilon productions; returns whether the start symbol was nullable.
  bool remove_empty_rules() {
    std::vector<bool> nullable(size(), false);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [lhs, rhs] : rules_) {
        if (nullable[lhs]) continue;
        if (std::all_of(rhs.begin(), rhs.end(), [&](const GrammarSymbol& s) { return !s.terminal && nullable[s.value]; })) {
          nullable[lhs] = true;
          changed = true;
        }
      }
    }
    std::set<std::pair<Nonterminal, Rhs>> out;
    for (const auto& [lhs, rhs] : rules_) {
      if (rhs.empty()) continue;
      out.insert({lhs, rhs});
      if (rhs.size() == 2) {
        if (!rhs[0].terminal && nullable[rhs[0].value]) out.insert({lhs, {rhs[1]}});
        if (!rhs[1].terminal && nullable[rhs[1].value]) out.insert({lhs, {rhs[0]}});
      }
    }
    rules_ = std::move(out);
    return nullable[start_];
  }

  void remove_unit_rules() {
    auto by_lhs = index(rules_);
    std::set<std::pair<Nonterminal, Rhs>> out;
    for (Nonterminal a = 0; a < size(); ++a) {
      std::set<Nonterminal> closure{a};
      std::vector<Nonterminal> stack{a};
      while (!stack.empty()) {
        const Nonterminal b = stack.back();
        stack.pop_back();
        for (const Rhs* rhs : by_lhs[b]) {
          if (rhs->size() == 1 && !(*rhs)[0].terminal && closure.insert((*rhs)[0].value).second) {
            stack.push_back((*rhs)[0].value);
          }
        }
      }
      for (Nonterminal b : closure) {
        for (const Rhs* rhs : by_lhs[b]) {
          if (!(rhs->size() == 1 && !(*rhs)[0].terminal)) out.insert({a, *rhs});
        }
      }
    }
    rules_ = std::move(out);
  }

  // Repeatedly identifies nonterminals whose production sets coincide.
  void merge_equivalent() {
    std::vector<Nonterminal> rep(size());
    for (Nonterminal v = 0; v < size(); ++v) rep[v] = v;
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<std::set<Rhs>> sets(size());
      for (const auto& [lhs, rhs] : rules_) {
        Rhs mapped = rhs;
        for (auto& s : mapped) {
          if (!s.terminal) s.value = rep[s.value];
        }
        sets[rep[lhs]].insert(std::move(mapped));
      }
      std::map<std::set<Rhs>, Nonterminal> seen;
      // The start symbol claims its class first so it stays a representative.
      std::vector<Nonterminal> order{start_};
      for (Nonterminal v = 0; v < size(); ++v) {
        if (v != start_ && rep[v] == v) order.push_back(v);
      }
      std::vector<Nonterminal> step(size());
      for (Nonterminal v = 0; v < size(); ++v) step[v] = v;
      for (Nonterminal v : order) {
        if (sets[v].empty()) continue;
        auto [it, inserted] = seen.emplace(sets[v], v);
        if (!inserted) {
          step[v] = it->second;
          changed = true;
        }
      }
      for (Nonterminal v = 0; v < size(); ++v) rep[v] = step[rep[v]];
      std::set<std::pair<Nonterminal, Rhs>> out;
      for (auto [lhs, rhs] : rules_) {
        if (rep[lhs] != lhs) continue;
        for (auto& s : rhs) {
          if (!s.terminal) s.value = rep[s.value];
        }
        out.insert({lhs, std::move(rhs)});
      }
      rules_ = std::move(out);
    }
  }

  void add_empty_word() {
    const bool start_on_rhs = std::any_of(rules_.begin(), rules_.end(), [&](const auto& rule) {
      return std::any_of(rule.second.begin(), rule.second.end(),
                         [&](const GrammarSymbol& s) { return !s.terminal && s.value == start_; });
    });
    if (start_on_rhs) {
      const Nonterminal fresh_start = fresh(names_[start_] + "0");
      std::vector<Rhs> copied;
      for (const auto& [lhs, rhs] : rules_) {
        if (lhs == start_) copied.push_back(rhs);
      }
      for (auto& rhs : copied) rules_.insert({fresh_start, std::move(rhs)});
      start_ = fresh_start;
    }
    rules_.insert({start_, {}});
  }

  // Renumbers reachable nonterminals breadth-first from the start symbol.
  Cfg finish() const {
    auto by_lhs = index(rules_);
    std::vector<Nonterminal> order{start_};
    std::vector<std::optional<Nonterminal>> renamed(size());
    renamed[start_] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const Rhs* rhs : by_lhs[order[i]]) {
        for (const auto& s : *rhs) {
          if (!s.terminal && !renamed[s.value]) {
            renamed[s.value] = static_cast<Nonterminal>(order.size());
            order.push_back(s.value);
          }
        }
      }
    }
    std::vector<std::string> names;
    for (Nonterminal v : order) names.push_back(names_[v]);
    std::vector<CnfProduction> productions;
    for (const auto& [lhs, rhs] : rules_) {
      if (!renamed[lhs]) continue;
      const Nonterminal l = *renamed[lhs];
      if (rhs.empty()) {
        productions.push_back(CnfProduction::empty_rule(l));
      } else if (rhs.size() == 1) {
        productions.push_back(CnfProduction::terminal_rule(l, static_cast<Letter>(rhs[0].value)));
      } else {
        productions.push_back(CnfProduction::binary_rule(l, *renamed[rhs[0].value], *renamed[rhs[1].value]));
      }
    }
    std::sort(productions.begin(), productions.end());
    return Cfg(alphabet_, std::move(names), 0, std::move(productions));
  }

  Cfg empty_grammar() const { return Cfg(alphabet_, {names_[start_]}, 0, {}); }

 private:
  std::vector<std::vector<const Rhs*>> index(const std::set<std::pair<Nonterminal, Rhs>>& rules) const {
    std::vector<std::vector<const Rhs*>> by_lhs(size());
    for (const auto& [lhs, rhs] : rules) by_lhs[lhs].push_back(&rhs);
    return by_lhs;
  }

  Alphabet alphabet_;
  std::vector<std::string> names_;
  Nonterminal start_;
  std::set<std::string> used_;
  std::set<std::pair<Nonterminal, Rhs>> rules_;
};

}  // namespace

Cfg cfg_to_cnf(const Grammar& grammar) {
  grammar.validate();
  Workbench bench(grammar);
  bench.remove_useless();
  if (bench.empty_language()) return bench.empty_grammar();
  bench.separate_terminals();
  bench.binarize();
  const bool empty_word = bench.remove_empty_rules();
  bench.remove_unit_rules();
  bench.remove_useless();
  bench.merge_equivalent();
  if (empty_word) bench.add_empty_word();
  if (bench.empty_language()) return bench.empty_grammar();
  return bench.finish();
}

Word DerivationTree::leaves() const {
  Word out;
  if (nodes.empty()) return out;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const auto& node = nodes[stack.back()];
    stack.pop_back();
    if (node.left) {
      stack.push_back(*node.right);
      stack.push_back(*node.left);
    } else if (node.end > node.begin) {
      out.push_back(word[node.begin]);
    }
  }
  return out;
}

std::size_t DerivationTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::size_t> level(nodes.size(), 1);
  std::size_t deepest = 1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (auto child : {nodes[i].left, nodes[i].right}) {
      if (child) {
        level[*child] = level[i] + 1;
        deepest = std::max(deepest, level[*child]);
      }
    }
  }
  return deepest;
}

Membership cyk_membership(const Cfg& cfg, const Word& word) {
  Membership result;
  const auto& prods = cfg.productions();
  if (word.empty()) {
    for (std::size_t p = 0; p < prods.size(); ++p) {
      if (prods[p].kind == CnfProduction::Kind::empty) {
        result.member = true;
        result.tree = DerivationTree{{DerivationNode{cfg.start(), p, 0, 0, std::nullopt, std::nullopt}}, word};
        return result;
      }
    }
    return result;
  }
  const std::size_t n = word.size();
  const std::size_t t = cfg.num_nonterminals();
  // derives[(len - 1) * n * t + i * t + v]: v derives word[i, i + len).
  std::vector<char> derives(n * n * t, 0);
  auto at = [&](std::size_t i, std::size_t len, Nonterminal v) -> char& { return derives[((len - 1) * n + i) * t + v]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : prods) {
      if (p.kind == CnfProduction::Kind::terminal && p.letter == word[i]) at(i, 1, p.lhs) = 1;
    }
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      for (const auto& p : prods) {
        if (p.kind != CnfProduction::Kind::binary || at(i, len, p.lhs)) continue;
        for (std::size_t split = 1; split < len; ++split) {
          if (at(i, split, p.left) && at(i + split, len - split, p.right)) {
            at(i, len, p.lhs) = 1;
            break;
          }
        }
      }
    }
  }
  if (!at(0, n, cfg.start())) return result;

  DerivationTree tree;
  tree.word = word;
  std::function<std::size_t(Nonterminal, std::size_t, std::size_t)> build = [&](Nonterminal v, std::size_t i,
                                                                                 std::size_t len) -> std::size_t {
    const std::size_t id = tree.nodes.size();
    tree.nodes.push_back(DerivationNode{v, 0, i, i + len, std::nullopt, std::nullopt});
    for (std::size_t p = 0; p < prods.size(); ++p) {
      const auto& rule = prods[p];
      if (rule.lhs != v) continue;
      if (rule.kind == CnfProduction::Kind::terminal && len == 1 && rule.letter == word[i]) {
        tree.nodes[id].production = p;
        return id;
      }
      if (rule.kind != CnfProduction::Kind::binary) continue;
      for (std::size_t split = 1; split < len; ++split) {
        if (at(i, split, rule.left) && at(i + split, len - split, rule.right)) {
          tree.nodes[id].production = p;
          const std::size_t l = build(rule.left, i, split);
          const std::size_t r = build(rule.right, i + split, len - split);
          tree.nodes[id].left = l;
          tree.nodes[id].right = r;
          return id;
        }
      }
    }
    throw std::logic_error("CYK table inconsistent");
  };
  build(cfg.start(), 0, n);
  result.member = true;
  result.tree = std::move(tree);
  return result;
}

namespace {

// Stack symbols for nonterminal indices: A-Z, a-z, then code points from U+0100.
StackSymbol stack_symbol(std::size_t i) {
  if (i < 26) return static_cast<StackSymbol>(U'A' + i);
  if (i < 52) return static_cast<StackSymbol>(U'a' + (i - 26));
  auto c = static_cast<StackSymbol>(0x100 + (i - 52));
  if (c >= kBottom) ++c;
  return c;
}

}  // namespace

Pda cfg_to_pda(const Cfg& cfg) {
  // Greibach normal form over indices 0..n-1 (the CNF nonterminals) and
  // n.. (tails introduced by left-recursion removal).
  const std::size_t n = cfg.num_nonterminals();
  std::vector<std::set<Rhs>> rules(n);
  for (const auto& p : cfg.productions()) {
    if (p.kind == CnfProduction::Kind::binary) {
      rules[p.lhs].insert({GrammarSymbol::variable(p.left), GrammarSymbol::variable(p.right)});
    } else if (p.kind == CnfProduction::Kind::terminal) {
      rules[p.lhs].insert({GrammarSymbol::letter(p.letter)});
    }
  }
  auto substitute_head = [&](const std::set<Rhs>& current, auto&& should_replace) {
    std::set<Rhs> out;
    for (const auto& rhs : current) {
      if (!rhs[0].terminal && should_replace(rhs[0].value)) {
        for (const auto& head : rules[rhs[0].value]) {
          Rhs combined = head;
          combined.insert(combined.end(), rhs.begin() + 1, rhs.end());
          out.insert(std::move(combined));
        }
      } else {
        out.insert(rhs);
      }
    }
    return out;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      rules[i] = substitute_head(rules[i], [j](std::uint32_t v) { return v == j; });
    }
    std::set<Rhs> tails;
    std::set<Rhs> heads;
    for (const auto& rhs : rules[i]) {
      if (!rhs[0].terminal && rhs[0].value == i) {
        tails.insert(Rhs(rhs.begin() + 1, rhs.end()));
      } else {
        heads.insert(rhs);
      }
    }
    if (tails.empty()) continue;
    const auto z = static_cast<std::uint32_t>(rules.size());
    std::set<Rhs> new_heads = heads;
    for (auto rhs : heads) {
      rhs.push_back(GrammarSymbol::variable(z));
      new_heads.insert(std::move(rhs));
    }
    std::set<Rhs> z_rules = tails;
    for (auto rhs : tails) {
      rhs.push_back(GrammarSymbol::variable(z));
      z_rules.insert(std::move(rhs));
    }
    rules[i] = std::move(new_heads);
    rules.push_back(std::move(z_rules));
  }
  for (std::size_t i = n; i-- > 0;) {
    rules[i] = substitute_head(rules[i], [](std::uint32_t) { return true; });
  }
  for (std::size_t z = n; z < rules.size(); ++z) {
    rules[z] = substitute_head(rules[z], [](std::uint32_t) { return true; });
  }

  std::set<StackSymbol> stack_alphabet;
  std::vector<PdaTransition> transitions;
  auto push_string = [&](const Rhs& rhs) {
    std::u32string push;
    for (std::size_t k = rhs.size(); k-- > 1;) {
      if (rhs[k].terminal) throw std::logic_error("Greibach form tail contains a letter");
      push.push_back(stack_symbol(rhs[k].value));
      stack_alphabet.insert(stack_symbol(rhs[k].value));
    }
    return push;
  };
  constexpr State kInit = 0;
  constexpr State kRun = 1;
  for (std::size_t v = 0; v < rules.size(); ++v) {
    for (const auto& rhs : rules[v]) {
      if (!rhs[0].terminal) throw std::logic_error("Greibach form production starts with a nonterminal");
      const auto a = static_cast<Letter>(rhs[0].value);
      const auto push = push_string(rhs);
      if (v == cfg.start()) transitions.push_back({kInit, a, kBottom, kRun, push});
      stack_alphabet.insert(stack_symbol(v));
      transitions.push_back({kRun, a, stack_symbol(v), kRun, push});
    }
  }
  StateSet finals{kRun};
  if (cfg.generates_empty_word()) finals.insert(kInit);
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  return Pda(cfg.alphabet(), std::move(stack_alphabet), 2, {kInit}, std::move(finals), std::move(transitions),
             {"q0", "q"});
}

Cfg pda_to_cfg(const Pda& pda) {
  using detail::Control;
  using detail::Symbol;
  const auto encoding = detail::encode_pda(pda);
  const auto& system = encoding.system;
  std::map<std::pair<Control, Symbol>, std::vector<const detail::PdsRule*>> by_head;
  for (const auto& rule : system.rules) by_head[{rule.from, rule.top}].push_back(&rule);

  Grammar g;
  g.alphabet = pda.alphabet();
  g.nonterminals.push_back("S");
  std::map<std::tuple<Control, Symbol, Control>, Nonterminal> triple;
  std::deque<std::tuple<Control, Symbol, Control>> pending;
  auto variable = [&](Control x, Symbol s, Control y) {
    auto [it, inserted] = triple.try_emplace({x, s, y}, static_cast<Nonterminal>(g.nonterminals.size()));
    if (inserted) {
      g.nonterminals.push_back("[" + std::to_string(x) + "," + std::to_string(s) + "," + std::to_string(y) + "]");
      pending.emplace_back(x, s, y);
    }
    return GrammarSymbol::variable(it->second);
  };
  for (Control c : system.initials) g.productions.push_back({0, {variable(c, system.bottom, system.accept)}});
  while (!pending.empty()) {
    const auto [x, s, y] = pending.front();
    pending.pop_front();
    const Nonterminal lhs = triple.at({x, s, y});
    auto it = by_head.find({x, s});
    if (it == by_head.end()) continue;
    for (const auto* rule : it->second) {
      Rhs head;
      if (rule->letter) head.push_back(GrammarSymbol::letter(*rule->letter));
      if (rule->push_length == 0) {
        if (rule->to == y) g.productions.push_back({lhs, head});
      } else if (rule->push_length == 1) {
        Rhs rhs = head;
        rhs.push_back(variable(rule->to, rule->push[0], y));
        g.productions.push_back({lhs, std::move(rhs)});
      } else {
        for (Control z = 0; z < system.num_controls; ++z) {
          Rhs rhs = head;
          rhs.push_back(variable(rule->to, rule->push[1], z));
          rhs.push_back(variable(z, rule->push[0], y));
          g.productions.push_back({lhs, std::move(rhs)});
        }
      }
    }
  }
  return cfg_to_cnf(g);
}

std::optional<std::size_t> cfg_max_word_length(const Cfg& cfg) {
  const std::size_t t = cfg.num_nonterminals();
  std::vector<std::vector<const CnfProduction*>> by_lhs(t);
  for (const auto& p : cfg.productions()) by_lhs[p.lhs].push_back(&p);

  std::vector<bool> productive(t, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : cfg.productions()) {
      if (productive[p.lhs]) continue;
      if (p.kind != CnfProduction::Kind::binary || (productive[p.left] && productive[p.right])) {
        productive[p.lhs] = true;
        changed = true;
      }
    }
  }
  if (!productive[cfg.start()]) return 0;
  auto usable = [&](const CnfProduction& p) {
    return p.kind != CnfProduction::Kind::binary || (productive[p.left] && productive[p.right]);
  };

  // Depth-first longest derivation with cycle detection on useful nonterminals.
  enum class Mark : std::uint8_t { fresh, active, done };
  std::vector<Mark> mark(t, Mark::fresh);
  std::vector<std::size_t> longest(t, 0);
  bool cyclic = false;
  std::function<void(Nonterminal)> visit = [&](Nonterminal v) {
    mark[v] = Mark::active;
    std::size_t best = 0;
    for (const auto* p : by_lhs[v]) {
      if (!usable(*p)) continue;
      if (p->kind == CnfProduction::Kind::terminal) {
        best = std::max<std::size_t>(best, 1);
      } else if (p->kind == CnfProduction::Kind::binary) {
        for (Nonterminal child : {p->left, p->right}) {
          if (mark[child] == Mark::active) cyclic = true;
          if (mark[child] == Mark::fresh) visit(child);
        }
        best = std::max(best, longest[p->left] + longest[p->right]);
      }
    }
    longest[v] = best;
    mark[v] = Mark::done;
  };
  visit(cfg.start());
  if (cyclic) return std::nullopt;
  return longest[cfg.start()];
}

std::size_t CompactDecomposition::static_length() const {
  std::size_t total = 0;
  for (const auto& s : statics) total += s.size();
  return total;
}

CompactDecomposition compact_decomposition(const Cfg& cfg, const Word& word) {
  auto membership = cyk_membership(cfg, word);
  if (!membership.member) throw PreconditionError("word is not generated by the grammar");
  CompactDecomposition d;
  d.word = word;
  d.num_nonterminals = cfg.num_nonterminals();
  d.tree = std::move(*membership.tree);
  const auto& nodes = d.tree.nodes;

  std::vector<std::size_t> level(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (auto child : {nodes[i].left, nodes[i].right}) {
      if (child) level[*child] = level[i] + 1;
    }
  }
  auto deepest_same_label = [&](std::size_t v) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    std::vector<std::size_t> stack;
    for (auto child : {nodes[v].right, nodes[v].left}) {
      if (child) stack.push_back(*child);
    }
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      if (nodes[u].symbol == nodes[v].symbol && (!best || level[u] > level[*best])) best = u;
      for (auto child : {nodes[u].right, nodes[u].left}) {
        if (child) stack.push_back(*child);
      }
    }
    return best;
  };

  Word current;
  auto emit_pump = [&](std::size_t begin, std::size_t end) {
    if (begin == end) return;
    d.statics.push_back(std::move(current));
    current.clear();
    d.pumps.push_back(word.substr(begin, end - begin));
  };
  std::function<void(std::size_t)> traverse = [&](std::size_t v) {
    const auto& node = nodes[v];
    if (!node.left) {
      current += word.substr(node.begin, node.end - node.begin);
      return;
    }
    if (auto u = deepest_same_label(v)) {
      d.pump_pairs.emplace_back(v, *u);
      emit_pump(node.begin, nodes[*u].begin);
      traverse(*u);
      emit_pump(nodes[*u].end, node.end);
      return;
    }
    traverse(*node.left);
    traverse(*node.right);
  };
  traverse(0);
  d.statics.push_back(std::move(current));
  return d;
}

Word pump(const CompactDecomposition& d, std::uint64_t l) {
  Word out;
  for (std::size_t i = 0; i < d.pumps.size(); ++i) {
    out += d.statics[i];
    for (std::uint64_t r = 0; r < l; ++r) out += d.pumps[i];
  }
  out += d.statics.back();
  return out;
}

}  // namespace pdaed
