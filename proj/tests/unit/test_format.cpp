#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "pdaed/errors.hpp"
#include "pdaed/format.hpp"

using namespace pdaed;
using namespace fixtures;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void check_parse_error(const std::string& text, std::size_t line, std::size_t column) {
  try {
    parse_document(text);
    FAIL("no error for:\n" << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("corpus documents round-trip byte for byte") {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(PDAED_TEST_DATA)) {
    const std::string text = slurp(entry.path());
    if (entry.path().filename().string().rfind("bad_", 0) == 0) {
      CHECK_THROWS_AS(parse_document(text), ParseError);
      continue;
    }
    CAPTURE(entry.path().string());
    CHECK(serialize_document(parse_document(text)) == text);
    ++count;
  }
  CHECK(count >= 6);
}

TEST_CASE("parsed documents mean what they say") {
  const auto anbn = read_document(std::string(PDAED_TEST_DATA) + "/anbn.pda");
  CHECK(anbn.kind == DocumentKind::pda);
  CHECK(anbn.name == std::optional<std::string>("a^n b^n"));
  for (const Word& w : all_words({U'a', U'b'}, 6)) CHECK(pda_accepts(anbn.pda(), w) == pda_accepts(pda_anbn(), w));

  const auto grammar = read_document(std::string(PDAED_TEST_DATA) + "/an_hash_bn.cfg");
  REQUIRE(grammar.cnf());
  CHECK(cyk_membership(*grammar.cnf(), U"aa#bb").member);
  CHECK_FALSE(cyk_membership(*grammar.cnf(), U"a#bb").member);
  CHECK(pda_accepts(grammar.pda(), U"a#b"));
  CHECK_THROWS_AS(grammar.nfa(), ValidationError);

  const auto dfa = read_document(std::string(PDAED_TEST_DATA) + "/a_star_b_star.dfa");
  CHECK(dfa.kind == DocumentKind::dfa);
  CHECK(nfa_accepts(dfa.nfa(), U"aabb"));
  CHECK_FALSE(dfa.cnf());
}

TEST_CASE("comments, aliases, escapes and blank lines") {
  const std::string text =
      "# leading comment\n"
      "kind: pda\r\n"
      "\n"
      "alphabet: lp U+0029\n"
      "symbols:\n"
      "   lp (\n"
      "stack: X Y\n"
      "  # indented comment\n"
      "states: s\n"
      "initial: s\n"
      "final: s\n"
      "trans:\n"
      "s lp _ s Y\n"
      "s ) Y s eps\n"
      "s lp Y s YY\n"
      "s lp Y s X Y\n";
  const auto doc = parse_document(text);
  const Pda& p = std::get<Pda>(doc.body);
  CHECK(p.alphabet() == Alphabet{U'(', U')'});
  CHECK(doc.symbols.at("lp") == U'(');
  CHECK(p.transitions()[0].top == kBottom);
  CHECK(p.transitions()[1].push.empty());
  CHECK(p.transitions()[2].push == U"YY");
  CHECK(p.transitions()[3].push == U"XY");
  CHECK(pda_accepts(p, U"(())"));
  const std::string canonical = serialize_document(doc);
  CHECK(canonical.find("symbols:\n  lp U+0028\n") != std::string::npos);
  CHECK(canonical.find("s lp ⊥ s Y") != std::string::npos);
  CHECK(canonical.find("s ) Y s ε") != std::string::npos);
  CHECK(serialize_document(parse_document(canonical)) == canonical);
}

TEST_CASE("letters that need escapes") {
  const Nfa spaced({U' ', U'ε', U'x'}, 1, {0}, {0}, {{0, U' ', 0}, {0, U'ε', 0}});
  const std::string text = serialize_document(AutomatonDocument::from_nfa(spaced));
  CHECK(text.find("alphabet: U+0020 x U+03B5") != std::string::npos);
  const auto back = parse_document(text);
  CHECK(back.nfa().alphabet() == spaced.alphabet());
  CHECK(serialize_document(back) == text);
}

TEST_CASE("parse errors carry positions") {
  check_parse_error("kind: pda\nalphabet: a b\nstack: A\nstates: p\ninitial: p\nfinal: p\ntrans:\n  p c ⊥ p A\n", 8, 5);
  check_parse_error("kind: nfa\nalphabet: a\nstates: p\ninitial: q\n", 4, 10);
  check_parse_error("kind: nfa\nalphabet: a\nstates: p p\ninitial: p\n", 3, 11);
  check_parse_error("kind: nfa\nalphabet: a\nstates: p\ninitial: p\nnonsense\n", 5, 1);
  check_parse_error("kind: nfa\nalphabet: a\nstates: p\n", 3, 1);
  check_parse_error("kind: nfa\nkind: nfa\n", 2, 1);
  check_parse_error("kind: tree\nalphabet: a\n", 1, 7);
  check_parse_error("kind: nfa\nalphabet: ab\nstates: p\ninitial: p\n", 2, 11);
  check_parse_error("kind: nfa\nalphabet: a\nstates: p\ninitial: p\ntrans:\n  p a\n", 6, 3);
  check_parse_error("kind: dfa\nalphabet: a\nstates: p q\ninitial: p\ntrans:\n  p a p\n  p a q\n", 1, 7);
  check_parse_error("kind: nfa\nalphabet: a\nstack: A\nstates: p\ninitial: p\n", 3, 1);
  check_parse_error("kind: cfg\nalphabet: a\nprod:\n  S -> a T\n", 4, 10);
  check_parse_error("kind: cfg\nalphabet: a\nprod:\n  S a\n", 4, 3);
  check_parse_error("kind: nfa\nalphabet: a\nstates: p\ninitial: p\ntrans: p a p\n", 5, 8);
  check_parse_error("kind: nfa\nalphabet: \xff\n", 2, 1);
}

TEST_CASE("grammars") {
  const auto doc = parse_document("kind: cfg\nalphabet: a b\nprod:\n  S -> a S b\n  S -> eps\n  S -> T\n  T -> a\n");
  const auto& g = std::get<Grammar>(doc.body);
  CHECK(g.nonterminals == std::vector<std::string>{"S", "T"});
  CHECK(g.start == 0);
  CHECK(g.productions[1].rhs.empty());
  const std::string canonical = serialize_document(doc);
  CHECK(canonical ==
        "kind: cfg\nalphabet: a b\nnonterminals: S T\nstart: S\nprod:\n  S -> a S b\n  S -> ε\n  S -> T\n  T -> a\n");
  CHECK_THROWS_AS(parse_document("kind: cfg\nalphabet: a\nnonterminals: a\nprod:\n  a -> a\n"), ParseError);
}

TEST_CASE("words") {
  CHECK(parse_word("") == U"");
  CHECK(parse_word("ε") == U"");
  CHECK(parse_word("aé#") == U"aé#");
  CHECK_THROWS_AS(parse_word("\xc3"), ValidationError);
}

TEST_CASE("property: random automata round-trip") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 50; ++i) {
    const Nfa nfa = random_nfa(rng, 4, 3);
    const std::string text = serialize_document(AutomatonDocument::from_nfa(nfa));
    const auto back = parse_document(text);
    CHECK(serialize_document(back) == text);
    CHECK(back.nfa().transitions() == nfa.transitions());
    CHECK(back.nfa().initials() == nfa.initials());
    CHECK(back.nfa().finals() == nfa.finals());

    const Pda pda = random_pda(rng, 4, 2);
    const std::string ptext = serialize_document(AutomatonDocument::from_pda(pda));
    const auto pback = parse_document(ptext);
    CHECK(serialize_document(pback) == ptext);
    CHECK(std::get<Pda>(pback.body).transitions() == pda.transitions());

    const Grammar g = to_grammar(pda_to_cfg(pda));
    const std::string gtext = serialize_document(AutomatonDocument::from_grammar(g));
    const auto gback = parse_document(gtext);
    CHECK(serialize_document(gback) == gtext);
    CHECK(std::get<Grammar>(gback.body).productions == g.productions);
  }
}
