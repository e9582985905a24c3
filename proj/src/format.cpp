#include "pdaed/format.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "pdaed/errors.hpp"
#include "pdaed/text.hpp"

namespace pdaed {

const char* to_string(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::nfa:
      return "nfa";
    case DocumentKind::dfa:
      return "dfa";
    case DocumentKind::pda:
      return "pda";
    case DocumentKind::cfg:
      return "cfg";
  }
  return "nfa";
}

AutomatonDocument AutomatonDocument::from_nfa(Nfa nfa, std::optional<std::string> name) {
  return {DocumentKind::nfa, std::move(name), {}, std::move(nfa)};
}

AutomatonDocument AutomatonDocument::from_dfa(const Dfa& dfa, std::optional<std::string> name) {
  return {DocumentKind::dfa, std::move(name), {}, dfa.nfa()};
}

AutomatonDocument AutomatonDocument::from_pda(Pda pda, std::optional<std::string> name) {
  return {DocumentKind::pda, std::move(name), {}, std::move(pda)};
}

AutomatonDocument AutomatonDocument::from_grammar(Grammar grammar, std::optional<std::string> name) {
  grammar.validate();
  return {DocumentKind::cfg, std::move(name), {}, std::move(grammar)};
}

const Nfa& AutomatonDocument::nfa() const {
  if (const auto* n = std::get_if<Nfa>(&body)) return *n;
  throw ValidationError(std::string("expected a finite automaton, got a ") + to_string(kind) + " document");
}

Pda AutomatonDocument::pda() const {
  if (const auto* n = std::get_if<Nfa>(&body)) return nfa_to_pda(*n);
  if (const auto* p = std::get_if<Pda>(&body)) return *p;
  return cfg_to_pda(*cnf());
}

std::optional<Cfg> AutomatonDocument::cnf() const {
  if (const auto* g = std::get_if<Grammar>(&body)) return cfg_to_cnf(*g);
  return std::nullopt;
}

namespace {

constexpr std::array<const char*, 12> kKeywords{"kind", "name",  "alphabet", "stack",        "symbols", "states",
                                                "initial", "final", "trans",    "nonterminals", "start",   "prod"};

bool is_block(const std::string& keyword) { return keyword == "symbols" || keyword == "trans" || keyword == "prod"; }

struct Token {
  Word text;
  std::size_t column;
};

struct Section {
  std::size_t line = 0;
  std::size_t column = 0;
  std::vector<Token> tokens;
  std::string rest;
  std::vector<std::pair<std::size_t, std::vector<Token>>> block;
};

[[noreturn]] void fail(const std::string& message, std::size_t line, std::size_t column) {
  throw ParseError(message, line, column);
}

bool is_space(char32_t c) { return c == U' ' || c == U'\t'; }

std::vector<Token> tokenize(const Word& text, std::size_t offset) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    tokens.push_back({text.substr(begin, i - begin), offset + begin + 1});
  }
  return tokens;
}

std::optional<Letter> escaped_letter(const Word& token) {
  if (token.size() < 6 || token.size() > 8 || token[0] != U'U' || token[1] != U'+') return std::nullopt;
  std::uint32_t value = 0;
  for (std::size_t i = 2; i < token.size(); ++i) {
    const char32_t c = token[i];
    std::uint32_t digit;
    if (c >= U'0' && c <= U'9') {
      digit = c - U'0';
    } else if (c >= U'A' && c <= U'F') {
      digit = c - U'A' + 10;
    } else {
      return std::nullopt;
    }
    value = value * 16 + digit;
  }
  if (value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) return std::nullopt;
  return static_cast<Letter>(value);
}

bool needs_escape(Letter c) {
  return c <= 0x20 || c == 0x7F || (c >= 0x80 && c <= 0xA0) || c == kBottom || c == U'ε' || c == 0xAD ||
         (c >= 0x2000 && c <= 0x200F) || (c >= 0x2028 && c <= 0x202F) || c == 0x205F || c == 0x3000 ||
         c == 0xFEFF;
}

bool is_empty_token(const Word& t) { return t == U"ε" || t == U"eps"; }

class Reader {
 public:
  explicit Reader(std::string_view text) { split(text); }

  AutomatonDocument read() {
    const Section& kind_section = required("kind");
    if (kind_section.tokens.size() != 1) fail("expected one of nfa, dfa, pda, cfg", kind_section.line, kind_section.column);
    const std::string kind = to_utf8(kind_section.tokens[0].text);
    AutomatonDocument doc;
    if (auto it = sections_.find("name"); it != sections_.end()) {
      if (it->second.rest.empty()) fail("empty name", it->second.line, it->second.column);
      doc.name = it->second.rest;
    }
    read_symbols(doc);
    const Alphabet alphabet = letter_set("alphabet", true);
    if (kind == "nfa" || kind == "dfa") {
      allow({"kind", "name", "symbols", "alphabet", "states", "initial", "final", "trans"});
      doc.kind = kind == "nfa" ? DocumentKind::nfa : DocumentKind::dfa;
      doc.body = read_nfa(alphabet);
      if (doc.kind == DocumentKind::dfa) {
        try {
          Dfa check(std::get<Nfa>(doc.body));
        } catch (const ValidationError& e) {
          fail(e.what(), kind_section.line, kind_section.tokens[0].column);
        }
      }
    } else if (kind == "pda") {
      allow({"kind", "name", "symbols", "alphabet", "stack", "states", "initial", "final", "trans"});
      doc.kind = DocumentKind::pda;
      doc.body = read_pda(alphabet);
    } else if (kind == "cfg") {
      allow({"kind", "name", "symbols", "alphabet", "nonterminals", "start", "prod"});
      doc.kind = DocumentKind::cfg;
      doc.body = read_grammar(alphabet);
    } else {
      fail("unknown document kind '" + kind + "'", kind_section.line, kind_section.tokens[0].column);
    }
    return doc;
  }

 private:
  void split(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    Section* block = nullptr;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(start, end - start);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      ++number;
      start = end + 1;
      Word line;
      try {
        line = from_utf8(raw);
      } catch (const ValidationError& e) {
        fail(e.what(), number, 1);
      }
      std::size_t first = 0;
      while (first < line.size() && is_space(line[first])) ++first;
      if (first == line.size() || line[first] == U'#') {
        if (end == text.size()) break;
        continue;
      }
      if (auto header = header_keyword(line, first)) {
        const std::string& keyword = *header;
        if (sections_.count(keyword) != 0) fail("duplicate section '" + keyword + "'", number, first + 1);
        Section& s = sections_[keyword];
        s.line = number;
        s.column = first + 1;
        const std::size_t after = first + keyword.size() + 1;
        s.tokens = tokenize(line.substr(after), after);
        Word rest = line.substr(after);
        const auto b = rest.find_first_not_of(U" \t");
        const auto e = rest.find_last_not_of(U" \t");
        s.rest = b == Word::npos ? std::string() : to_utf8(rest.substr(b, e - b + 1));
        if (is_block(keyword)) {
          if (!s.tokens.empty()) fail("'" + keyword + ":' takes its entries on the following lines", number, s.tokens[0].column);
          block = &s;
        } else {
          block = nullptr;
        }
      } else {
        if (block == nullptr) fail("expected a section header", number, first + 1);
        block->block.push_back({number, tokenize(line, 0)});
      }
      if (end == text.size()) break;
    }
  }

  static std::optional<std::string> header_keyword(const Word& line, std::size_t first) {
    for (const char* k : kKeywords) {
      const Word keyword = from_utf8(k);
      if (line.compare(first, keyword.size(), keyword) == 0 && first + keyword.size() < line.size() &&
          line[first + keyword.size()] == U':') {
        return std::string(k);
      }
    }
    return std::nullopt;
  }

  const Section& required(const std::string& keyword) const {
    auto it = sections_.find(keyword);
    if (it == sections_.end()) fail("missing section '" + keyword + ":'", last_line(), 1);
    return it->second;
  }

  const Section* optional_section(const std::string& keyword) const {
    auto it = sections_.find(keyword);
    return it == sections_.end() ? nullptr : &it->second;
  }

  std::size_t last_line() const {
    std::size_t line = 1;
    for (const auto& [k, s] : sections_) {
      line = std::max(line, s.line);
      if (!s.block.empty()) line = std::max(line, s.block.back().first);
    }
    return line;
  }

  void allow(std::initializer_list<const char*> keywords) const {
    std::set<std::string> allowed(keywords.begin(), keywords.end());
    for (const auto& [k, s] : sections_) {
      if (allowed.count(k) == 0) fail("section '" + k + ":' does not apply to this kind", s.line, s.column);
    }
  }

  void read_symbols(AutomatonDocument& doc) {
    const Section* s = optional_section("symbols");
    if (s == nullptr) return;
    for (const auto& [line, tokens] : s->block) {
      if (tokens.size() != 2) fail("expected 'token letter'", line, tokens[0].column);
      const Word& alias = tokens[0].text;
      if (alias.size() < 2) fail("symbol tokens have at least two characters", line, tokens[0].column);
      if (escaped_letter(alias) || is_empty_token(alias) || alias == U"->") {
        fail("reserved symbol token", line, tokens[0].column);
      }
      Letter letter;
      if (auto e = escaped_letter(tokens[1].text)) {
        letter = *e;
      } else if (tokens[1].text.size() == 1) {
        letter = tokens[1].text[0];
      } else {
        fail("expected a single character or U+XXXX", line, tokens[1].column);
      }
      const std::string key = to_utf8(alias);
      if (!doc.symbols.emplace(key, letter).second) fail("duplicate symbol token", line, tokens[0].column);
      aliases_[alias] = letter;
    }
  }

  Letter letter(const Token& t, std::size_t line) const {
    if (auto it = aliases_.find(t.text); it != aliases_.end()) return it->second;
    if (auto e = escaped_letter(t.text)) return *e;
    if (t.text.size() == 1 && t.text[0] != kBottom && t.text[0] != U'ε') return t.text[0];
    fail("'" + to_utf8(t.text) + "' is not a letter", line, t.column);
  }

  Alphabet letter_set(const std::string& keyword, bool needed) const {
    const Section* s = needed ? &required(keyword) : optional_section(keyword);
    Alphabet out;
    if (s == nullptr) return out;
    for (const auto& t : s->tokens) {
      if (!out.insert(letter(t, s->line)).second) fail("duplicate letter", s->line, t.column);
    }
    return out;
  }

  struct States {
    std::vector<std::string> names;
    std::map<std::string, State> index;
  };

  States states() const {
    const Section& s = required("states");
    States out;
    for (const auto& t : s.tokens) {
      const std::string name = to_utf8(t.text);
      if (!out.index.emplace(name, static_cast<State>(out.names.size())).second) {
        fail("duplicate state '" + name + "'", s.line, t.column);
      }
      out.names.push_back(name);
    }
    return out;
  }

  static State state(const States& states, const Token& t, std::size_t line) {
    auto it = states.index.find(to_utf8(t.text));
    if (it == states.index.end()) fail("unknown state '" + to_utf8(t.text) + "'", line, t.column);
    return it->second;
  }

  StateSet state_set(const States& states, const std::string& keyword, bool needed) const {
    const Section* s = needed ? &required(keyword) : optional_section(keyword);
    StateSet out;
    if (s == nullptr) return out;
    for (const auto& t : s->tokens) {
      if (!out.insert(state(states, t, s->line)).second) fail("duplicate state", s->line, t.column);
    }
    return out;
  }

  Letter member(const Alphabet& alphabet, const Token& t, std::size_t line) const {
    const Letter a = letter(t, line);
    if (alphabet.count(a) == 0) fail("letter '" + to_utf8(t.text) + "' is not in the alphabet", line, t.column);
    return a;
  }

  Nfa read_nfa(const Alphabet& alphabet) const {
    const States st = states();
    const StateSet initials = state_set(st, "initial", true);
    const StateSet finals = state_set(st, "final", false);
    std::vector<NfaTransition> transitions;
    if (const Section* s = optional_section("trans")) {
      for (const auto& [line, tokens] : s->block) {
        if (tokens.size() != 3) fail("expected 'state letter state'", line, tokens[0].column);
        transitions.push_back({state(st, tokens[0], line), member(alphabet, tokens[1], line), state(st, tokens[2], line)});
      }
    }
    return Nfa(alphabet, st.names.size(), initials, finals, std::move(transitions), st.names);
  }

  StackSymbol stack_symbol(const std::set<StackSymbol>& stack, const Token& t, std::size_t line) const {
    const Letter s = letter(t, line);
    if (stack.count(s) == 0) fail("'" + to_utf8(t.text) + "' is not a stack symbol", line, t.column);
    return s;
  }

  Pda read_pda(const Alphabet& alphabet) const {
    const States st = states();
    const StateSet initials = state_set(st, "initial", true);
    const StateSet finals = state_set(st, "final", false);
    std::set<StackSymbol> stack;
    if (const Section* s = optional_section("stack")) {
      for (const auto& t : s->tokens) {
        if (t.text == U"_" && aliases_.count(t.text) == 0) fail("'_' denotes the empty stack", s->line, t.column);
        if (!stack.insert(letter(t, s->line)).second) fail("duplicate stack symbol", s->line, t.column);
      }
    }
    std::vector<PdaTransition> transitions;
    if (const Section* s = optional_section("trans")) {
      for (const auto& [line, tokens] : s->block) {
        if (tokens.size() < 5) fail("expected 'state letter top state push'", line, tokens[0].column);
        PdaTransition tr{state(st, tokens[0], line), member(alphabet, tokens[1], line), kBottom,
                         state(st, tokens[3], line), U""};
        const Word& top = tokens[2].text;
        if (!(top == U"⊥" || (top == U"_" && stack.count(U'_') == 0))) tr.top = stack_symbol(stack, tokens[2], line);
        if (tokens.size() == 5 && is_empty_token(tokens[4].text) && aliases_.count(tokens[4].text) == 0) {
          transitions.push_back(tr);
          continue;
        }
        for (std::size_t i = 4; i < tokens.size(); ++i) {
          const Token& t = tokens[i];
          if (aliases_.count(t.text) != 0 || escaped_letter(t.text)) {
            tr.push += stack_symbol(stack, t, line);
            continue;
          }
          for (std::size_t j = 0; j < t.text.size(); ++j) {
            tr.push += stack_symbol(stack, Token{t.text.substr(j, 1), t.column + j}, line);
          }
        }
        transitions.push_back(std::move(tr));
      }
    }
    return Pda(alphabet, stack, st.names.size(), initials, finals, std::move(transitions), st.names);
  }

  Grammar read_grammar(const Alphabet& alphabet) const {
    Grammar g;
    g.alphabet = alphabet;
    std::map<std::string, Nonterminal> index;
    auto declare = [&](const Token& t, std::size_t line) {
      const std::string name = to_utf8(t.text);
      if (t.text == U"->" || is_empty_token(t.text)) fail("reserved nonterminal name", line, t.column);
      auto [it, inserted] = index.emplace(name, static_cast<Nonterminal>(g.nonterminals.size()));
      if (inserted) g.nonterminals.push_back(name);
      return inserted;
    };
    const Section* prod = optional_section("prod");
    if (const Section* s = optional_section("nonterminals")) {
      for (const auto& t : s->tokens) {
        if (!declare(t, s->line)) fail("duplicate nonterminal", s->line, t.column);
      }
    } else if (prod != nullptr) {
      for (const auto& [line, tokens] : prod->block) declare(tokens[0], line);
    }
    if (g.nonterminals.empty()) fail("a grammar needs at least one nonterminal", last_line(), 1);
    for (const auto& [name, v] : index) {
      if (alphabet.count(static_cast<Letter>(from_utf8(name)[0])) != 0 && from_utf8(name).size() == 1) {
        const Section* s = optional_section("nonterminals");
        fail("nonterminal '" + name + "' is also a letter", s ? s->line : prod->line, 1);
      }
      if (aliases_.count(from_utf8(name)) != 0) fail("nonterminal '" + name + "' is also a symbol token", last_line(), 1);
    }
    if (const Section* s = optional_section("start")) {
      if (s->tokens.size() != 1) fail("expected one start symbol", s->line, s->column);
      auto it = index.find(to_utf8(s->tokens[0].text));
      if (it == index.end()) fail("unknown nonterminal", s->line, s->tokens[0].column);
      g.start = it->second;
    }
    if (prod != nullptr) {
      for (const auto& [line, tokens] : prod->block) {
        if (tokens.size() < 3 || tokens[1].text != U"->") fail("expected 'V -> ...'", line, tokens[0].column);
        auto lhs = index.find(to_utf8(tokens[0].text));
        if (lhs == index.end()) fail("unknown nonterminal '" + to_utf8(tokens[0].text) + "'", line, tokens[0].column);
        GrammarProduction p{lhs->second, {}};
        if (tokens.size() == 3 && is_empty_token(tokens[2].text) && aliases_.count(tokens[2].text) == 0) {
          g.productions.push_back(p);
          continue;
        }
        for (std::size_t i = 2; i < tokens.size(); ++i) {
          auto v = index.find(to_utf8(tokens[i].text));
          p.rhs.push_back(v != index.end() ? GrammarSymbol::variable(v->second)
                                           : GrammarSymbol::letter(member(alphabet, tokens[i], line)));
        }
        g.productions.push_back(std::move(p));
      }
    }
    return g;
  }

  std::map<std::string, Section> sections_;
  std::map<Word, Letter> aliases_;
};

class Writer {
 public:
  explicit Writer(const AutomatonDocument& doc) : doc_(doc) {
    for (const auto& [alias, letter] : doc.symbols) {
      if (alias.size() < 2 || alias.find_first_of(" \t\n") != std::string::npos) {
        throw ValidationError("symbol token '" + alias + "' cannot be written");
      }
      alias_of_.emplace(letter, alias);
    }
  }

  std::string write() {
    out_ << "kind: " << to_string(doc_.kind) << '\n';
    if (doc_.name) {
      if (doc_.name->empty() || doc_.name->find('\n') != std::string::npos) throw ValidationError("name cannot be written");
      out_ << "name: " << *doc_.name << '\n';
    }
    if (const auto* n = std::get_if<Nfa>(&doc_.body)) {
      header(n->alphabet());
      write_states(n->state_names(), n->initials(), n->finals());
      out_ << "trans:\n";
      for (const auto& t : n->transitions()) {
        out_ << "  " << n->state_names()[t.from] << ' ' << rep(t.letter) << ' ' << n->state_names()[t.to] << '\n';
      }
    } else if (const auto* p = std::get_if<Pda>(&doc_.body)) {
      header(p->alphabet());
      out_ << "stack:";
      for (StackSymbol s : p->stack_alphabet()) out_ << ' ' << rep(s);
      out_ << '\n';
      write_states(p->state_names(), p->initials(), p->finals());
      out_ << "trans:\n";
      for (const auto& t : p->transitions()) {
        out_ << "  " << p->state_names()[t.from] << ' ' << rep(t.letter) << ' '
             << (t.top == kBottom ? std::string("⊥") : rep(t.top)) << ' ' << p->state_names()[t.to] << ' '
             << push_string(t.push) << '\n';
      }
    } else {
      const auto& g = std::get<Grammar>(doc_.body);
      g.validate();
      header(g.alphabet);
      for (const auto& name : g.nonterminals) {
        check_name(name);
        if (name == "->" || name == "ε" || name == "eps" || doc_.symbols.count(name) != 0) {
          throw ValidationError("nonterminal name '" + name + "' cannot be written");
        }
        const Word w = from_utf8(name);
        if (w.size() == 1 && g.alphabet.count(w[0]) != 0) throw ValidationError("nonterminal '" + name + "' is also a letter");
      }
      out_ << "nonterminals:";
      for (const auto& name : g.nonterminals) out_ << ' ' << name;
      out_ << "\nstart: " << g.nonterminals[g.start] << "\nprod:\n";
      for (const auto& p : g.productions) {
        out_ << "  " << g.nonterminals[p.lhs] << " ->";
        if (p.rhs.empty()) out_ << " ε";
        for (const auto& s : p.rhs) {
          out_ << ' ' << (s.terminal ? rep(static_cast<Letter>(s.value)) : g.nonterminals[s.value]);
        }
        out_ << '\n';
      }
    }
    return out_.str();
  }

 private:
  std::string rep(Letter c) const {
    if (auto it = alias_of_.find(c); it != alias_of_.end()) return it->second;
    if (needs_escape(c)) {
      char buffer[16];
      std::snprintf(buffer, sizeof buffer, "U+%04X", static_cast<unsigned>(c));
      return buffer;
    }
    return to_utf8(c);
  }

  std::string push_string(const Word& push) const {
    if (push.empty()) return "ε";
    std::vector<std::string> parts;
    bool plain = true;
    for (StackSymbol s : push) {
      parts.push_back(rep(s));
      plain = plain && from_utf8(parts.back()).size() == 1;
    }
    std::string joined;
    for (const auto& p : parts) joined += p;
    const Word w = from_utf8(joined);
    if (plain && doc_.symbols.count(joined) == 0 && !escaped_letter(w) && !is_empty_token(w)) return joined;
    std::string spaced;
    for (const auto& p : parts) spaced += (spaced.empty() ? "" : " ") + p;
    return spaced;
  }

  static void check_name(const std::string& name) {
    if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos || name[0] == '#') {
      throw ValidationError("name '" + name + "' cannot be written");
    }
  }

  void header(const Alphabet& alphabet) {
    out_ << "alphabet:";
    for (Letter a : alphabet) out_ << ' ' << rep(a);
    out_ << '\n';
    if (!doc_.symbols.empty()) {
      out_ << "symbols:\n";
      for (const auto& [alias, letter] : doc_.symbols) {
        char buffer[16];
        std::snprintf(buffer, sizeof buffer, "U+%04X", static_cast<unsigned>(letter));
        out_ << "  " << alias << ' ' << buffer << '\n';
      }
    }
  }

  void write_states(const std::vector<std::string>& names, const StateSet& initials, const StateSet& finals) {
    std::set<std::string> seen;
    for (const auto& name : names) {
      check_name(name);
      if (!seen.insert(name).second) throw ValidationError("duplicate state name '" + name + "'");
    }
    out_ << "states:";
    for (const auto& name : names) out_ << ' ' << name;
    out_ << "\ninitial:";
    for (State s : initials) out_ << ' ' << names[s];
    out_ << "\nfinal:";
    for (State s : finals) out_ << ' ' << names[s];
    out_ << '\n';
  }

  const AutomatonDocument& doc_;
  std::map<Letter, std::string> alias_of_;
  std::ostringstream out_;
};

}  // namespace

AutomatonDocument parse_document(std::string_view text) {
  Reader reader(text);
  return reader.read();
}

AutomatonDocument read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

std::string serialize_document(const AutomatonDocument& document) {
  Writer writer(document);
  return writer.write();
}

Word parse_word(std::string_view text) {
  Word w = from_utf8(text);
  if (w == U"ε") return U"";
  return w;
}

}  // namespace pdaed
