#include <doctest.h>

#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "pdaed/cli.hpp"
#include "pdaed/format.hpp"
#include "pdaed/text.hpp"
#include "pdaed/word_distance.hpp"

using namespace pdaed;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(PDAED_TEST_DATA) + "/" + name; }

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_command(args, out, err);
  return {status, out.str(), err.str()};
}

// The report lines other than the timing statistics.
std::string without_stats(const std::string& report) {
  std::istringstream in(report);
  std::string line;
  std::string kept;
  while (std::getline(in, line)) {
    if (line.rfind("stats.", 0) != 0) kept += line + "\n";
  }
  return kept;
}

std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  }
  return "<missing>";
}

}  // namespace

TEST_CASE("documented examples") {
  const Run ted = run({"ted", "--pda", data("anbn.pda"), "--nfa", data("a_star_b_star.dfa"), "--threshold", "0"});
  CHECK(ted.status == kExitOk);
  CHECK(field(ted.out, "verdict") == "true");

  const Run dist = run({"distance", "--pda", data("sigma_star.nfa"), "--nfa", data("a_star.nfa")});
  CHECK(dist.status == kExitOk);
  CHECK(field(dist.out, "value") == "\"∞\"");
  CHECK(field(dist.out, "verdict") == "\"infinite\"");

  const Run bad = run({"validate", data("bad_letter.pda")});
  CHECK(bad.status == kExitInvalidInput);
  CHECK(bad.err.find("line 8, column 5") != std::string::npos);
}

TEST_CASE("value commands") {
  CHECK(field(run({"ed-words", "kitten", "sitting"}).out, "value") == "3");
  CHECK(field(run({"ed-words", "", "ab"}).out, "value") == "2");
  for (int n = 1; n <= 5; ++n) {
    const Run r = run({"ed-word-nfa", std::string(n, 'b'), data("a_star.nfa")});
    CHECK(field(r.out, "value") == std::to_string(n));
  }
  const Run cfg_target = run({"ed-word-nfa", "a", data("an_hash_bn.cfg")});
  CHECK(cfg_target.status == kExitInvalidInput);

  const Run doubling = run({"distance", "--pda", data("doubling4.cfg"), "--nfa", data("epsilon.dfa")});
  CHECK(field(doubling.out, "value") == "16");
  CHECK(field(doubling.out, "witness") == "\"aaaaaaaaaaaaaaaa\"");
  CHECK(field(doubling.out, "bound-report.nonterminals") == "5");
}

TEST_CASE("decisions never fail the process") {
  const Run incl = run({"inclusion", "--pda", data("anbn.pda"), "--nfa", data("a_star.nfa")});
  CHECK(incl.status == kExitOk);
  CHECK(field(incl.out, "verdict") == "false");
  CHECK(field(incl.out, "witness") == "\"ab\"");

  const Run ted = run({"ted", "--pda", data("sigma_star.nfa"), "--nfa", data("a_star.nfa"), "--threshold", "2"});
  CHECK(ted.status == kExitOk);
  CHECK(field(ted.out, "verdict") == "false");
  CHECK(field(ted.out, "witness") == "\"bbb\"");

  const Run fed = run({"fed", "--pda", data("an_hash_bn.cfg"), "--nfa", data("a_star_or_b_star.nfa")});
  CHECK(fed.status == kExitOk);
  CHECK(field(fed.out, "verdict") == "\"infinite\"");

  const Run huge = run({"ted", "--pda", data("anbn.pda"), "--nfa", data("a_star_b_star.dfa"), "--threshold",
                        "123456789012345678901234567890"});
  CHECK(field(huge.out, "verdict") == "true");
  CHECK(field(huge.out, "threshold") == "\"123456789012345678901234567890\"");
}

TEST_CASE("bound budget") {
  const std::vector<std::string> base{"fed", "--pda", data("sigma_star.nfa"), "--nfa", data("a_star.nfa"),
                                      "--max-bound", "3"};
  const Run strict = run(base);
  CHECK(strict.status == kExitBudget);
  CHECK(strict.err.find("exceeds") != std::string::npos);
  auto relaxed_args = base;
  relaxed_args.push_back("--best-effort");
  const Run relaxed = run(relaxed_args);
  CHECK(relaxed.status == kExitOk);
  CHECK(field(relaxed.out, "verdict") == "\"undetermined\"");
  CHECK(field(relaxed.out, "note") == "\"distance > 3 or infinite\"");
  CHECK(relaxed.err.find("warning") != std::string::npos);
}

TEST_CASE("usage and precondition errors") {
  CHECK(run({}).status == kExitUsage);
  CHECK(run({"ted", "--pda", data("anbn.pda")}).status == kExitUsage);
  CHECK(run({"ted", "--pda", data("anbn.pda"), "--nfa", data("a_star.nfa"), "--threshold", "-1"}).status == kExitUsage);
  CHECK(run({"validate", data("missing.nfa")}).status == kExitUsage);
  CHECK(run({"hat", "--in", data("a_star.nfa"), "--marker", "a"}).status == kExitInvalidInput);
  CHECK(run({"oracle", "ted", "--pda", data("anbn.pda"), "--nfa", data("a_star.nfa"), "--threshold",
             "100000000000000000000000"})
            .status == kExitPrecondition);
  CHECK(run({"oracle", "--budget", "0", "sup", "--pda", data("anbn.pda"), "--nfa", data("a_star.nfa")}).status ==
        kExitInvalidInput);
  CHECK(run({"--help"}).status == kExitOk);
}

TEST_CASE("documents produced by hat and convert") {
  const Run hat = run({"hat", "--in", data("a_star.nfa"), "--marker", "#"});
  REQUIRE(hat.status == kExitOk);
  const auto doc = parse_document(hat.out);
  CHECK(nfa_accepts(doc.nfa(), U"#aa##"));
  CHECK_FALSE(nfa_accepts(doc.nfa(), U"#b#"));
  CHECK(serialize_document(doc) == hat.out);

  const Run hat_pda = run({"hat", "--in", data("anbn.pda"), "--marker", "#"});
  CHECK(pda_accepts(parse_document(hat_pda.out).pda(), U"#ab##aabb#"));

  for (const char* kind : {"cfg", "cnf", "pda"}) {
    const Run c = run({"convert", "--from", data("anbn.pda"), "--to", kind});
    REQUIRE(c.status == kExitOk);
    const auto converted = parse_document(c.out);
    CHECK(serialize_document(converted) == c.out);
    CHECK(pda_accepts(converted.pda(), U"aabb"));
    CHECK_FALSE(pda_accepts(converted.pda(), U"abab"));
  }
}

TEST_CASE("decompose") {
  const Run d = run({"decompose", "--cfg", data("an_hash_bn.cfg"), "--word", "aa#bb", "--pump", "3"});
  CHECK(d.status == kExitOk);
  CHECK(field(d.out, "verdict") == "true");
  CHECK(field(d.out, "pumped.word") == "\"aaaaaa#bbbbbb\"");
  const Run no = run({"decompose", "--cfg", data("an_hash_bn.cfg"), "--word", "a#"});
  CHECK(no.status == kExitOk);
  CHECK(field(no.out, "verdict") == "false");
}

TEST_CASE("oracle commands and the budget variable") {
  const Run sup = run({"oracle", "sup", "--pda", data("an_hash_bn.cfg"), "--nfa", data("a_star_or_b_star.nfa"), "--budget", "10"});
  CHECK(field(sup.out, "value") == "5");
  CHECK(field(sup.out, "witness") == "\"aaaa#bbbb\"");

  ::setenv(kOracleBudgetVariable, "3", 1);
  const Run env = run({"oracle", "sup", "--pda", data("sigma_star.nfa"), "--nfa", data("a_star.nfa")});
  CHECK(field(env.out, "value") == "3");
  CHECK(field(env.out, "budget") == "3");
  ::setenv(kOracleBudgetVariable, "lots", 1);
  CHECK(run({"oracle", "sup", "--pda", data("sigma_star.nfa"), "--nfa", data("a_star.nfa")}).status == kExitInvalidInput);
  ::unsetenv(kOracleBudgetVariable);

  const Run word = run({"oracle", "word-nfa", "bbb", data("a_star.nfa")});
  CHECK(field(word.out, "value") == "3");
  const Run ted = run({"oracle", "--budget", "4", "ted", "--pda", data("sigma_star.nfa"), "--nfa", data("a_star.nfa"),
                       "--threshold", "4"});
  CHECK(field(ted.out, "verdict") == "\"none-found\"");
}

TEST_CASE("reports are deterministic and both renderings agree") {
  const std::vector<std::vector<std::string>> commands{
      {"distance", "--pda", data("an_hash_bn.cfg"), "--nfa", data("a_star_or_b_star.nfa")},
      {"distance", "--pda", data("doubling4.cfg"), "--nfa", data("epsilon.dfa")},
      {"fed", "--pda", data("anbn.pda"), "--nfa", data("a_star_b_star.dfa")},
      {"inclusion", "--pda", data("anbn.pda"), "--nfa", data("a_star.nfa")},
      {"validate", data("anbn.pda")},
  };
  for (const auto& command : commands) {
    const Run first = run(command);
    const Run second = run(command);
    CHECK(without_stats(first.out) == without_stats(second.out));

    auto json_command = command;
    json_command.insert(json_command.begin(), "--json");
    auto parsed = nlohmann::json::parse(run(json_command).out);
    parsed.erase("stats");
    for (const auto& [key, value] : parsed.items()) {
      if (value.is_object()) {
        for (const auto& [inner, v] : value.items()) CHECK(field(first.out, key + "." + inner) == v.dump());
      } else {
        CHECK(field(first.out, key) == value.dump());
      }
    }
  }
}

TEST_CASE("printed witnesses re-validate") {
  const Run r = run({"distance", "--pda", data("doubling4.cfg"), "--nfa", data("epsilon.dfa")});
  std::string witness = field(r.out, "witness");
  witness = witness.substr(1, witness.size() - 2);
  const auto target = read_document(data("epsilon.dfa"));
  CHECK(word_to_nfa_distance(from_utf8(witness), target.nfa()) == Distance(16));
  CHECK(pda_accepts(read_document(data("doubling4.cfg")).pda(), from_utf8(witness)));
}
