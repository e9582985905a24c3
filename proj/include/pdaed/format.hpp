#pragma once

// Plain-text documents describing automata and grammars.
//
//   # a comment (only when '#' is the first visible character of the line)
//   kind: pda
//   name: balanced words
//   alphabet: a b
//   stack: A
//   states: p q
//   initial: p
//   final: p q
//   trans:
//     p a ⊥ p A
//     p a A p AA
//     p b A q ε
//     q b A q ε
//
// Grammars use `nonterminals:`, `start:` and a `prod:` block with lines
// `V -> X Y ...` (`V -> ε` for the empty word). Letters are single visible
// characters. A `symbols:` block maps longer tokens to letters (`hash U+0023`
// or `hash #`), and any letter may be written as `U+XXXX`. In PDA lines the
// stack top `⊥` (or `_`) matches only the empty stack and `ε` (or `eps`)
// is the empty push string.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pdaed/automata.hpp"
#include "pdaed/grammar.hpp"

namespace pdaed {

enum class DocumentKind { nfa, dfa, pda, cfg };

const char* to_string(DocumentKind kind);

struct AutomatonDocument {
  DocumentKind kind = DocumentKind::nfa;
  std::optional<std::string> name;
  /// Token -> letter, for letters that are awkward to write directly.
  std::map<std::string, Letter> symbols;
  std::variant<Nfa, Pda, Grammar> body;

  static AutomatonDocument from_nfa(Nfa nfa, std::optional<std::string> name = std::nullopt);
  static AutomatonDocument from_dfa(const Dfa& dfa, std::optional<std::string> name = std::nullopt);
  static AutomatonDocument from_pda(Pda pda, std::optional<std::string> name = std::nullopt);
  static AutomatonDocument from_grammar(Grammar grammar, std::optional<std::string> name = std::nullopt);

  /// The automaton of an nfa or dfa document. Throws ValidationError otherwise.
  const Nfa& nfa() const;
  /// An equivalent PDA for any document kind.
  Pda pda() const;
  /// A CNF grammar for cfg documents; nullopt for automata.
  std::optional<Cfg> cnf() const;
};

/// Throws ParseError (a ValidationError) with the line and column of the
/// offending token.
AutomatonDocument parse_document(std::string_view text);
/// Reads and parses a file. Throws ValidationError when it cannot be read.
AutomatonDocument read_document(const std::string& path);

/// Canonical text. parse_document(serialize_document(d)) reproduces d, and
/// serializing again yields identical bytes.
std::string serialize_document(const AutomatonDocument& document);

/// Reads a word given on the command line: UTF-8 characters, with "" or "ε"
/// for the empty word.
Word parse_word(std::string_view text);

}  // namespace pdaed
