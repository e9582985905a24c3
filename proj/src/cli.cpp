#include "pdaed/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <json.hpp>
#include <limits>
#include <ostream>

#include "pdaed/errors.hpp"
#include "pdaed/fed.hpp"
#include "pdaed/format.hpp"
#include "pdaed/oracle.hpp"
#include "pdaed/text.hpp"
#include "pdaed/word_distance.hpp"

namespace pdaed {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

const char* const kInfinity = "∞";

json distance_json(const Distance& d) {
  if (d.is_infinite()) return kInfinity;
  return d.value();
}

std::string word_text(const Word& w) { return to_utf8(w); }

void flatten(const json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    if (j.empty()) out += path + ": {}\n";
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array()) {
    if (j.empty()) out += path + ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), out);
  } else {
    out += path + ": " + j.dump(-1, ' ', false) + "\n";
  }
}

std::string render(const json& report, bool as_json) {
  if (as_json) return report.dump(2, ' ', false) + "\n";
  std::string out;
  flatten(report, "", out);
  return out;
}

Natural parse_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ValidationError("expected a nonnegative decimal integer, got '" + text + "'");
  }
  return Natural(text);
}

std::string check_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    return "expected a nonnegative decimal integer";
  }
  return {};
}

struct Source {
  Pda pda;
  std::optional<Cfg> grammar;
};

Source load_source(const std::string& path) {
  const AutomatonDocument doc = read_document(path);
  Source s;
  s.grammar = doc.cnf();
  s.pda = s.grammar ? cfg_to_pda(*s.grammar) : doc.pda();
  return s;
}

Nfa load_target(const std::string& path) { return read_document(path).nfa(); }

json bound_json(const BoundReport& b) {
  return {{"nonterminals", b.nonterminals},
          {"safety-states", b.safety_states},
          {"bound", b.bound.str()},
          {"adjustment", b.adjustment}};
}

// Every printed witness is re-checked against the library before it is shown.
void require(bool condition, const char* what) {
  if (!condition) throw std::logic_error(std::string("witness failed re-validation: ") + what);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t default_oracle_budget() {
  if (const char* env = std::getenv(kOracleBudgetVariable)) {
    const std::string text(env);
    if (check_natural(text).empty() && text.size() < 6) return std::stoul(text);
    throw ValidationError(std::string(kOracleBudgetVariable) + " must be a small nonnegative integer");
  }
  return OracleBudget{}.source_length;
}

struct Options {
  bool as_json = false;
  std::string pda_path;
  std::string nfa_path;
  std::string threshold = "0";
  std::string file;
  std::string word;
  std::string second_word;
  std::optional<std::uint64_t> pump_count;
  std::string marker;
  std::string target_kind;
  std::string max_bound = "1000000";
  bool best_effort = false;
  std::size_t max_states = 0;
  std::optional<std::size_t> budget;
};

FedOptions fed_options(const Options& o, const Source& s) {
  FedOptions f;
  f.ted.max_states = o.max_states;
  f.max_bound = Natural(o.max_bound);
  f.best_effort = o.best_effort;
  f.grammar = s.grammar;
  return f;
}

json stats(std::size_t explored, std::size_t probes, Clock::time_point start) {
  return {{"explored-states", explored}, {"probes", probes}, {"elapsed", seconds_since(start)}};
}

json cmd_ed_words(const Options& o) {
  const Word a = parse_word(o.word);
  const Word b = parse_word(o.second_word);
  return {{"verdict", "finite"}, {"value", edit_distance_words(a, b)}};
}

json cmd_ed_word_nfa(const Options& o) {
  const Word w = parse_word(o.word);
  const Distance d = word_to_nfa_distance(w, load_target(o.file));
  return {{"verdict", d.is_finite() ? "finite" : "infinite"}, {"value", distance_json(d)}};
}

json cmd_ted(const Options& o, Clock::time_point start) {
  const Source s = load_source(o.pda_path);
  const Nfa nfa = load_target(o.nfa_path);
  const Natural t = parse_natural(o.threshold);
  const ThresholdDecision d = threshold_decide(s.pda, nfa, t, fed_options(o, s));
  const TedResult& r = d.result;
  json report{{"verdict", r.within}, {"threshold", t.str()}};
  if (d.fed) {
    report["bound-report"] = bound_json(d.fed->bound);
    report["note"] = std::string("threshold at least B + adjustment; decided by the finiteness check");
  }
  if (r.counterexample) {
    const Word& w = *r.counterexample;
    require(pda_accepts(s.pda, w), "not accepted by the source");
    const Distance dist = word_to_nfa_distance(w, nfa);
    require(dist.is_infinite() || Natural(dist.value()) > t, "distance within the threshold");
    report["witness"] = word_text(w);
    report["witness-distance"] = distance_json(dist);
  }
  report["stats"] = stats(r.explored_states, d.fed ? d.fed->probes : 1, start);
  return report;
}

json cmd_inclusion(const Options& o, Clock::time_point start) {
  const Source s = load_source(o.pda_path);
  const Nfa nfa = load_target(o.nfa_path);
  TedOptions options;
  options.max_states = o.max_states;
  const TedResult r = inclusion(s.pda, nfa, options);
  json report{{"verdict", r.within}};
  if (r.counterexample) {
    require(pda_accepts(s.pda, *r.counterexample), "not accepted by the source");
    require(!nfa_accepts(nfa, *r.counterexample), "accepted by the target");
    report["witness"] = word_text(*r.counterexample);
  }
  report["stats"] = stats(r.explored_states, 1, start);
  return report;
}

void warn_about_bound(const FedVerdict& v, const Options& o, std::ostream& err) {
  if (v.bound.bound > Natural(o.max_bound)) {
    err << "warning: bound B = " << v.bound.bound.str() << " exceeds --max-bound " << o.max_bound
        << (o.best_effort ? "; thresholds were truncated\n" : "\n");
  }
}

json fed_json(const FedVerdict& v, const Source& s, const Nfa& nfa) {
  json report{{"verdict", to_string(v.verdict)}, {"bound-report", bound_json(v.bound)}};
  if (v.verdict == Finiteness::infinite && v.counterexample) {
    const Word& w = *v.counterexample;
    require(pda_accepts(s.pda, w), "not accepted by the source");
    const Distance d = word_to_nfa_distance(w, prefix_closure(nfa));
    require(d.is_infinite() || Natural(d.value()) > v.bound.bound, "too close to the prefix closure");
    report["witness"] = word_text(w);
  }
  if (v.verdict == Finiteness::undetermined) {
    report["note"] = "distance > " + v.safety_exceeds->str() + " or infinite";
  }
  return report;
}

json cmd_fed(const Options& o, Clock::time_point start, std::ostream& err) {
  const Source s = load_source(o.pda_path);
  const Nfa nfa = load_target(o.nfa_path);
  FedVerdict v;
  try {
    v = fed_decide(s.pda, nfa, fed_options(o, s));
  } catch (const BudgetExceeded&) {
    err << "hint: pass --best-effort for a bounded-threshold report, or raise --max-bound\n";
    throw;
  }
  warn_about_bound(v, o, err);
  json report = fed_json(v, s, nfa);
  report["stats"] = stats(v.explored_states, v.probes, start);
  return report;
}

json cmd_distance(const Options& o, Clock::time_point start, std::ostream& err) {
  const Source s = load_source(o.pda_path);
  const Nfa nfa = load_target(o.nfa_path);
  DistanceReport r;
  try {
    r = edit_distance_compute(s.pda, nfa, fed_options(o, s));
  } catch (const BudgetExceeded&) {
    err << "hint: pass --best-effort for a bounded-threshold report, or raise --max-bound\n";
    throw;
  }
  warn_about_bound(r.fed, o, err);
  json report = fed_json(r.fed, s, nfa);
  report["value"] = distance_json(r.value);
  if (r.value.is_finite() && r.witness) {
    require(pda_accepts(s.pda, *r.witness), "not accepted by the source");
    require(word_to_nfa_distance(*r.witness, nfa) == r.value, "distance differs from the value");
    report["witness"] = word_text(*r.witness);
  }
  report["stats"] = stats(r.explored_states, r.probes, start);
  return report;
}

Cfg grammar_of(const AutomatonDocument& doc) {
  if (auto cnf = doc.cnf()) return *cnf;
  return pda_to_cfg(doc.pda());
}

json cmd_decompose(const Options& o) {
  const Cfg cfg = grammar_of(read_document(o.file));
  const Word w = parse_word(o.word);
  const Membership m = cyk_membership(cfg, w);
  json report{{"verdict", m.member}, {"nonterminals", cfg.num_nonterminals()}};
  if (!m.member) return report;
  const CompactDecomposition d = compact_decomposition(cfg, w);
  json statics = json::array();
  json pumps = json::array();
  for (const auto& s : d.statics) statics.push_back(word_text(s));
  for (const auto& u : d.pumps) pumps.push_back(word_text(u));
  require(pump(d, 1) == w, "decomposition does not spell the word");
  report["decomposition"] = {
      {"statics", statics}, {"pumps", pumps}, {"k", d.k()}, {"static-length", d.static_length()}};
  if (o.pump_count) {
    const Word pumped = pump(d, *o.pump_count);
    require(cyk_membership(cfg, pumped).member, "pumped word left the language");
    report["pumped"] = {{"count", *o.pump_count}, {"word", word_text(pumped)}};
  }
  return report;
}

Letter parse_marker(const std::string& text) {
  const Word w = from_utf8(text);
  if (w.size() != 1) throw ValidationError("the marker must be a single character");
  return w[0];
}

std::string cmd_hat(const Options& o) {
  const AutomatonDocument doc = read_document(o.file);
  const Letter marker = parse_marker(o.marker);
  AutomatonDocument out;
  if (doc.kind == DocumentKind::nfa || doc.kind == DocumentKind::dfa) {
    out = AutomatonDocument::from_nfa(hat_closure(doc.nfa(), marker), doc.name);
  } else {
    out = AutomatonDocument::from_pda(hat_closure(doc.pda(), marker), doc.name);
  }
  out.symbols = doc.symbols;
  return serialize_document(out);
}

std::string cmd_convert(const Options& o) {
  const AutomatonDocument doc = read_document(o.file);
  AutomatonDocument out;
  if (o.target_kind == "pda") {
    out = AutomatonDocument::from_pda(doc.pda(), doc.name);
  } else if (o.target_kind == "cnf") {
    out = AutomatonDocument::from_grammar(to_grammar(grammar_of(doc)), doc.name);
  } else if (doc.kind == DocumentKind::cfg) {
    out = doc;
  } else {
    out = AutomatonDocument::from_grammar(to_grammar(pda_to_cfg(doc.pda())), doc.name);
  }
  out.symbols = doc.symbols;
  return serialize_document(out);
}

json cmd_validate(const Options& o) {
  const AutomatonDocument doc = read_document(o.file);
  json report{{"verdict", "valid"}, {"kind", to_string(doc.kind)}};
  if (const auto* n = std::get_if<Nfa>(&doc.body)) {
    report["states"] = n->num_states();
    report["transitions"] = n->transitions().size();
  } else if (const auto* p = std::get_if<Pda>(&doc.body)) {
    report["states"] = p->num_states();
    report["transitions"] = p->transitions().size();
  } else {
    const auto& g = std::get<Grammar>(doc.body);
    report["nonterminals"] = g.nonterminals.size();
    report["productions"] = g.productions.size();
  }
  if (doc.name) report["name"] = *doc.name;
  return report;
}

OracleBudget oracle_budget(const Options& o) {
  OracleBudget b;
  b.source_length = o.budget ? *o.budget : default_oracle_budget();
  b.validate();
  return b;
}

json cmd_oracle_word(const Options& o) {
  const Distance d = oracle_word_to_language(parse_word(o.word), load_target(o.file), oracle_budget(o));
  return {{"verdict", d.is_finite() ? "finite" : "infinite"}, {"value", distance_json(d)}};
}

json cmd_oracle_sup(const Options& o) {
  const Source s = load_source(o.pda_path);
  const Nfa nfa = load_target(o.nfa_path);
  const OracleBudget b = oracle_budget(o);
  const OracleSup r = oracle_sup_distance(s.pda, nfa, b);
  json report{{"verdict", "lower-bound"}, {"value", distance_json(r.value)}, {"words", r.words},
              {"budget", b.source_length}};
  if (r.witness) {
    require(pda_accepts(s.pda, *r.witness), "not accepted by the source");
    report["witness"] = word_text(*r.witness);
  }
  return report;
}

json cmd_oracle_ted(const Options& o) {
  const Source s = load_source(o.pda_path);
  const Nfa nfa = load_target(o.nfa_path);
  const Natural t = parse_natural(o.threshold);
  if (t > Natural(std::numeric_limits<std::uint64_t>::max())) throw PreconditionError("threshold too large for the oracle");
  const OracleBudget b = oracle_budget(o);
  const OracleTed r = oracle_ted(s.pda, nfa, static_cast<std::uint64_t>(t), b);
  json report{{"verdict", r.violation_found ? "violation" : "none-found"}, {"threshold", t.str()},
              {"budget", b.source_length}};
  if (r.witness) {
    require(pda_accepts(s.pda, *r.witness), "not accepted by the source");
    report["witness"] = word_text(*r.witness);
  }
  return report;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edit distance from pushdown to regular languages", "pdaed"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.as_json, "Render the report as JSON")->configurable(false);
  app.fallthrough();

  auto source_target = [&](CLI::App* sub) {
    sub->add_option("--pda", o.pda_path, "Source document (pda, cfg, nfa or dfa)")->required()->check(CLI::ExistingFile);
    sub->add_option("--nfa", o.nfa_path, "Target document (nfa or dfa)")->required()->check(CLI::ExistingFile);
  };
  auto search_limits = [&](CLI::App* sub) {
    sub->add_option("--max-states", o.max_states, "Abort after this many explored states (0: unlimited)");
  };
  auto bound_limits = [&](CLI::App* sub) {
    sub->add_option("--max-bound", o.max_bound, "Largest bound B analysed in full")->check(check_natural);
    sub->add_flag("--best-effort", o.best_effort, "Probe thresholds up to --max-bound when B is larger");
  };

  auto* ed_words = app.add_subcommand("ed-words", "Edit distance between two words");
  ed_words->add_option("w1", o.word)->required();
  ed_words->add_option("w2", o.second_word)->required();

  auto* ed_word_nfa = app.add_subcommand("ed-word-nfa", "Edit distance from a word to a regular language");
  ed_word_nfa->add_option("word", o.word)->required();
  ed_word_nfa->add_option("file", o.file)->required()->check(CLI::ExistingFile);

  auto* ted = app.add_subcommand("ted", "Is every word of L(pda) within the threshold of L(nfa)?");
  source_target(ted);
  ted->add_option("--threshold", o.threshold, "Threshold (unbounded decimal)")->required()->check(check_natural);
  search_limits(ted);
  bound_limits(ted);

  auto* fed = app.add_subcommand("fed", "Is the edit distance finite?");
  source_target(fed);
  search_limits(fed);
  bound_limits(fed);

  auto* distance = app.add_subcommand("distance", "Exact edit distance");
  source_target(distance);
  search_limits(distance);
  bound_limits(distance);

  auto* incl = app.add_subcommand("inclusion", "Is L(pda) a subset of L(nfa)?");
  source_target(incl);
  search_limits(incl);

  auto* decompose = app.add_subcommand("decompose", "Compact decomposition of a word of a grammar");
  decompose->add_option("--cfg", o.file, "Grammar or automaton document")->required()->check(CLI::ExistingFile);
  decompose->add_option("--word", o.word, "Word of the language")->required();
  decompose->add_option("--pump", o.pump_count, "Also print w(L)");

  auto* hat = app.add_subcommand("hat", "Marker closure {#w1#...#wk# : wi in L}");
  hat->add_option("--in", o.file)->required()->check(CLI::ExistingFile);
  hat->add_option("--marker", o.marker)->required();

  auto* convert = app.add_subcommand("convert", "Convert between grammars and automata");
  convert->add_option("--from", o.file)->required()->check(CLI::ExistingFile);
  convert->add_option("--to", o.target_kind)->required()->check(CLI::IsMember({"cfg", "pda", "cnf"}));

  auto* validate = app.add_subcommand("validate", "Parse and validate a document");
  validate->add_option("file", o.file)->required()->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("oracle", "Brute-force reference computations");
  oracle->require_subcommand(1);
  oracle->add_option("--budget", o.budget, "Longest enumerated source word");
  auto* oracle_word = oracle->add_subcommand("word-nfa", "Word to language by enumeration");
  oracle_word->add_option("word", o.word)->required();
  oracle_word->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  auto* oracle_sup = oracle->add_subcommand("sup", "Largest distance among short source words");
  source_target(oracle_sup);
  auto* oracle_ted = oracle->add_subcommand("ted", "Search short source words for a threshold violation");
  source_target(oracle_ted);
  oracle_ted->add_option("--threshold", o.threshold)->required()->check(check_natural);
  for (auto* sub : {oracle_word, oracle_sup, oracle_ted}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto start = Clock::now();
  try {
    if (ed_words->parsed()) {
      out << render(cmd_ed_words(o), o.as_json);
    } else if (ed_word_nfa->parsed()) {
      out << render(cmd_ed_word_nfa(o), o.as_json);
    } else if (ted->parsed()) {
      out << render(cmd_ted(o, start), o.as_json);
    } else if (fed->parsed()) {
      out << render(cmd_fed(o, start, err), o.as_json);
    } else if (distance->parsed()) {
      out << render(cmd_distance(o, start, err), o.as_json);
    } else if (incl->parsed()) {
      out << render(cmd_inclusion(o, start), o.as_json);
    } else if (decompose->parsed()) {
      out << render(cmd_decompose(o), o.as_json);
    } else if (hat->parsed()) {
      out << cmd_hat(o);
    } else if (convert->parsed()) {
      out << cmd_convert(o);
    } else if (validate->parsed()) {
      out << render(cmd_validate(o), o.as_json);
    } else if (oracle_word->parsed()) {
      out << render(cmd_oracle_word(o), o.as_json);
    } else if (oracle_sup->parsed()) {
      out << render(cmd_oracle_sup(o), o.as_json);
    } else if (oracle_ted->parsed()) {
      out << render(cmd_oracle_ted(o), o.as_json);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace pdaed
