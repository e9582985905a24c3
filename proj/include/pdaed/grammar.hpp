#pragma once

// Context-free grammars: a general form for input, Chomsky normal form for
// every algorithm, CYK parsing, conversions to and from pushdown automata,
// and compact decompositions of derivations into static and pumpable parts.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdaed/automata.hpp"

namespace pdaed {

using Nonterminal = std::uint32_t;

struct GrammarSymbol {
  bool terminal = false;
  std::uint32_t value = 0;  ///< A Letter when terminal, otherwise a Nonterminal.

  static GrammarSymbol letter(Letter a) { return {true, static_cast<std::uint32_t>(a)}; }
  static GrammarSymbol variable(Nonterminal v) { return {false, v}; }

  friend auto operator<=>(const GrammarSymbol&, const GrammarSymbol&) = default;
};

struct GrammarProduction {
  Nonterminal lhs = 0;
  std::vector<GrammarSymbol> rhs;  ///< Empty for an epsilon production.

  friend auto operator<=>(const GrammarProduction&, const GrammarProduction&) = default;
};

/// A context-free grammar with arbitrary finite right-hand sides.
struct Grammar {
  Alphabet alphabet;
  std::vector<std::string> nonterminals;
  Nonterminal start = 0;
  std::vector<GrammarProduction> productions;

  /// Throws ValidationError on out-of-range indices, letters outside the
  /// alphabet, duplicate or empty names, or a grammar without nonterminals.
  void validate() const;
};

struct CnfProduction {
  enum class Kind : std::uint8_t { binary, terminal, empty };

  Kind kind = Kind::terminal;
  Nonterminal lhs = 0;
  Nonterminal left = 0;   ///< binary only
  Nonterminal right = 0;  ///< binary only
  Letter letter = 0;      ///< terminal only

  static CnfProduction binary_rule(Nonterminal lhs, Nonterminal left, Nonterminal right) {
    return {Kind::binary, lhs, left, right, 0};
  }
  static CnfProduction terminal_rule(Nonterminal lhs, Letter a) { return {Kind::terminal, lhs, 0, 0, a}; }
  static CnfProduction empty_rule(Nonterminal lhs) { return {Kind::empty, lhs, 0, 0, 0}; }

  friend auto operator<=>(const CnfProduction&, const CnfProduction&) = default;
};

/// A grammar in Chomsky normal form. The only epsilon production allowed is
/// start -> eps, and then the start symbol occurs on no right-hand side.
class Cfg {
 public:
  Cfg() = default;
  /// Throws ValidationError when the productions violate the normal form.
  Cfg(Alphabet alphabet, std::vector<std::string> names, Nonterminal start, std::vector<CnfProduction> productions);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  Nonterminal start() const noexcept { return start_; }
  const std::vector<CnfProduction>& productions() const noexcept { return productions_; }

  /// T, the number of nonterminals.
  std::size_t num_nonterminals() const noexcept { return names_.size(); }
  bool generates_empty_word() const noexcept { return has_empty_; }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  Nonterminal start_ = 0;
  std::vector<CnfProduction> productions_;
  bool has_empty_ = false;
};

Grammar to_grammar(const Cfg& cfg);

/// Equivalent grammar in Chomsky normal form, without useless nonterminals.
/// Nonterminals with identical production sets are merged, so the result is
/// not larger than the textbook construction and often smaller.
Cfg cfg_to_cnf(const Grammar& grammar);

struct DerivationNode {
  Nonterminal symbol = 0;
  std::size_t production = 0;  ///< Index into Cfg::productions().
  std::size_t begin = 0;       ///< Covered factor is word[begin, end).
  std::size_t end = 0;
  std::optional<std::size_t> left;   ///< Children of binary productions.
  std::optional<std::size_t> right;
};

/// Node 0 is the root; children always have larger indices than parents.
struct DerivationTree {
  std::vector<DerivationNode> nodes;
  Word word;

  Word leaves() const;
  std::size_t depth() const;
};

struct Membership {
  bool member = false;
  std::optional<DerivationTree> tree;
};

/// CYK parsing. The tree prefers earlier productions, then shorter left parts.
Membership cyk_membership(const Cfg& cfg, const Word& word);

/// Real-time pushdown automaton for L(cfg), through Greibach normal form.
Pda cfg_to_pda(const Cfg& cfg);

/// Grammar for L(pda) by the triple construction on the normalized pushdown
/// system, followed by cfg_to_cnf.
Cfg pda_to_cfg(const Pda& pda);

/// Length of a longest word of L(cfg), or nullopt when the language is
/// infinite. Zero for the empty language.
std::optional<std::size_t> cfg_max_word_length(const Cfg& cfg);

/// w = s_1 u_1 s_2 u_2 ... s_k u_k s_{k+1} where every w(l) = s_1 u_1^l ... s_{k+1}
/// belongs to the language.
struct CompactDecomposition {
  std::vector<Word> statics;  ///< k + 1 parts
  std::vector<Word> pumps;    ///< k parts, all nonempty
  Word word;
  std::size_t num_nonterminals = 0;
  DerivationTree tree;
  /// (ancestor, descendant) node indices of every pump pair.
  std::vector<std::pair<std::size_t, std::size_t>> pump_pairs;

  std::size_t k() const noexcept { return pumps.size(); }
  std::size_t static_length() const;
};

/// Greedy pre-order traversal of the CYK tree: at each node, the deepest
/// descendant with the same label (leftmost among the deepest) forms a pump
/// pair; the flanks between them become pumpable parts and the traversal
/// continues below the descendant. Throws PreconditionError when `word` is not
/// in L(cfg).
CompactDecomposition compact_decomposition(const Cfg& cfg, const Word& word);

/// w(l).
Word pump(const CompactDecomposition& d, std::uint64_t l);

}  // namespace pdaed
