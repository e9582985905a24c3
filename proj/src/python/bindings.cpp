#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "pdaed/cli.hpp"
#include "pdaed/errors.hpp"
#include "pdaed/grammar.hpp"
#include "pdaed/fed.hpp"
#include "pdaed/format.hpp"
#include "pdaed/text.hpp"
#include "pdaed/word_distance.hpp"

namespace py = pybind11;
using namespace pdaed;

namespace {

py::object distance_value(const Distance& d) {
  if (d.is_infinite()) return py::float_(INFINITY);
  return py::int_(d.value());
}

Natural to_natural(const py::int_& value) {
  const std::string text = py::str(value);
  if (!text.empty() && text[0] == '-') throw py::value_error("threshold must be nonnegative");
  return Natural(text);
}

py::int_ from_natural(const Natural& n) { return py::int_(py::str(n.str())); }

py::object optional_word(const std::optional<Word>& w) {
  if (!w) return py::none();
  return py::str(to_utf8(*w));
}

struct Source {
  Pda pda;
  std::optional<Cfg> grammar;
};

Source source_of(const AutomatonDocument& doc) {
  Source s;
  s.grammar = doc.cnf();
  s.pda = s.grammar ? cfg_to_pda(*s.grammar) : doc.pda();
  return s;
}

FedOptions fed_options(const Source& s, const std::optional<py::int_>& max_bound, bool best_effort) {
  FedOptions options;
  options.grammar = s.grammar;
  if (max_bound) options.max_bound = to_natural(*max_bound);
  options.best_effort = best_effort;
  return options;
}

py::dict bound_dict(const BoundReport& b) {
  py::dict d;
  d["nonterminals"] = b.nonterminals;
  d["safety_states"] = b.safety_states;
  d["bound"] = from_natural(b.bound);
  d["adjustment"] = b.adjustment;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Edit distance from pushdown languages to regular languages";

  const auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", validation.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<AutomatonDocument>(m, "Document")
      .def_static("parse", &parse_document, py::arg("text"), "Parse a document from text.")
      .def_static("read", &read_document, py::arg("path"), "Parse a document from a file.")
      .def_property_readonly("kind", [](const AutomatonDocument& d) { return std::string(to_string(d.kind)); })
      .def_property_readonly("name", [](const AutomatonDocument& d) { return d.name; })
      .def("serialize", &serialize_document)
      .def("__str__", &serialize_document)
      .def("accepts", [](const AutomatonDocument& d, const std::string& word) {
        const Word w = parse_word(word);
        if (const auto* n = std::get_if<Nfa>(&d.body)) return nfa_accepts(*n, w);
        return pda_accepts(d.pda(), w);
      }, py::arg("word"));

  m.def("ed_words", [](const std::string& a, const std::string& b) {
    return edit_distance_words(parse_word(a), parse_word(b));
  }, py::arg("a"), py::arg("b"));

  m.def("ed_word_nfa", [](const std::string& word, const AutomatonDocument& nfa) {
    return distance_value(word_to_nfa_distance(parse_word(word), nfa.nfa()));
  }, py::arg("word"), py::arg("nfa"), "Distance from a word to a regular language (inf when it is empty).");

  m.def("ted", [](const AutomatonDocument& pda, const AutomatonDocument& nfa, const py::int_& threshold) {
    const Source s = source_of(pda);
    const ThresholdDecision d = threshold_decide(s.pda, nfa.nfa(), to_natural(threshold), fed_options(s, {}, false));
    return py::make_tuple(d.result.within, optional_word(d.result.counterexample));
  }, py::arg("pda"), py::arg("nfa"), py::arg("threshold"),
        "(within, counterexample): is every word of the source within `threshold` edits of the target?");

  m.def("inclusion", [](const AutomatonDocument& pda, const AutomatonDocument& nfa) {
    const TedResult r = inclusion(source_of(pda).pda, nfa.nfa());
    return py::make_tuple(r.within, optional_word(r.counterexample));
  }, py::arg("pda"), py::arg("nfa"));

  m.def("fed", [](const AutomatonDocument& pda, const AutomatonDocument& nfa, std::optional<py::int_> max_bound,
                  bool best_effort) {
    const Source s = source_of(pda);
    const FedVerdict v = fed_decide(s.pda, nfa.nfa(), fed_options(s, max_bound, best_effort));
    py::dict out;
    out["verdict"] = to_string(v.verdict);
    out["bound"] = bound_dict(v.bound);
    out["witness"] = optional_word(v.counterexample);
    return out;
  }, py::arg("pda"), py::arg("nfa"), py::arg("max_bound") = py::none(), py::arg("best_effort") = false);

  m.def("distance", [](const AutomatonDocument& pda, const AutomatonDocument& nfa, std::optional<py::int_> max_bound,
                       bool best_effort) {
    const Source s = source_of(pda);
    const DistanceReport r = edit_distance_compute(s.pda, nfa.nfa(), fed_options(s, max_bound, best_effort));
    py::dict out;
    out["value"] = distance_value(r.value);
    out["verdict"] = to_string(r.fed.verdict);
    out["bound"] = bound_dict(r.fed.bound);
    out["witness"] = optional_word(r.witness);
    return out;
  }, py::arg("pda"), py::arg("nfa"), py::arg("max_bound") = py::none(), py::arg("best_effort") = false);

  m.def("decompose", [](const AutomatonDocument& doc, const std::string& word) -> py::object {
    const Cfg cfg = doc.cnf() ? *doc.cnf() : pda_to_cfg(doc.pda());
    const Word w = parse_word(word);
    if (!cyk_membership(cfg, w).member) return py::none();
    const CompactDecomposition d = compact_decomposition(cfg, w);
    py::list statics;
    py::list pumps;
    for (const auto& s : d.statics) statics.append(to_utf8(s));
    for (const auto& u : d.pumps) pumps.append(to_utf8(u));
    return py::make_tuple(statics, pumps);
  }, py::arg("grammar"), py::arg("word"), "(statics, pumps) of a compact decomposition, or None for non-members.");

  m.def("hat", [](const AutomatonDocument& doc, const std::string& marker) {
    const Word w = from_utf8(marker);
    if (w.size() != 1) throw ValidationError("the marker must be a single character");
    AutomatonDocument out = (doc.kind == DocumentKind::nfa || doc.kind == DocumentKind::dfa)
                                ? AutomatonDocument::from_nfa(hat_closure(doc.nfa(), w[0]), doc.name)
                                : AutomatonDocument::from_pda(hat_closure(doc.pda(), w[0]), doc.name);
    out.symbols = doc.symbols;
    return out;
  }, py::arg("document"), py::arg("marker"));

  m.def("run_command", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run_command(args, out, err);
    return py::make_tuple(status, out.str(), err.str());
  }, py::arg("args"), "Run a command-line invocation in process: (status, stdout, stderr).");
}
