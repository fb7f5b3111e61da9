// Copyright 2026 The ccgbeam Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ccgbeam/chart.hpp"
#include "ccgbeam/cli.hpp"
#include "ccgbeam/corpus.hpp"
#include "ccgbeam/errors.hpp"
#include "ccgbeam/eval.hpp"
#include "ccgbeam/multitag.hpp"
#include "ccgbeam/score.hpp"

namespace py = pybind11;
using namespace ccgbeam;

namespace {

using TagSet = std::vector<std::pair<std::string, double>>;
using Span = std::tuple<int, int, std::string, double>;

std::vector<TagEntry> ToEntries(const TagSet& set) {
  std::vector<TagEntry> out;
  for (const auto& [cat, lp] : set) out.push_back({cat, lp});
  return out;
}

py::dict DecodeSentence(const std::vector<std::string>& words, const std::vector<TagSet>& tags,
                        const Grammar& grammar, const std::optional<std::vector<Span>>& spans,
                        int beam, double w_st, double w_sp, double missing, int unary_depth,
                        bool any_root) {
  DecodeConfig cfg;
  cfg.beam = beam;
  cfg.unary_depth = unary_depth;
  cfg.any_root = any_root;
  cfg.Validate();
  ScoreConfig score{w_st, w_sp, missing};
  score.Validate();
  std::vector<std::vector<TagEntry>> sets;
  for (const auto& t : tags) sets.push_back(ToEntries(t));

  std::unique_ptr<LabelScorer> scorer;
  if (spans) {
    auto chart = std::make_unique<ScoreChart>(static_cast<int>(words.size()));
    for (const auto& [start, end, label, value] : *spans) chart->Add(start, end, label, value);
    scorer = std::move(chart);
  } else {
    scorer = std::make_unique<FrequencyScorer>(grammar.tables);
  }
  ParseResult r;
  {
    py::gil_scoped_release release;
    r = Decode(words, sets, grammar, *scorer, cfg, score);
  }
  py::list trees;
  for (const auto& t : r.trees) trees.append(FormatTree(t));
  py::dict out;
  out["trees"] = trees;
  out["skimmed"] = r.skimmed;
  out["score"] = r.score;
  out["fragment_scores"] = r.fragment_scores;
  out["categories"] = r.categories;
  out["dependencies"] = r.deps;
  out["items"] = r.items;
  return out;
}

py::dict ReportDict(const EvalReport& r) {
  py::dict d;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["f"] = r.f;
  d["category_accuracy"] = r.category_accuracy;
  d["coverage"] = r.coverage;
  d["sentence_accuracy"] = r.sentence_accuracy;
  d["gold_deps"] = r.gold_deps;
  d["test_deps"] = r.test_deps;
  d["matched"] = r.matched;
  d["sentences"] = r.sentences;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grammar-constrained CCG chart parser";
  m.attr("__version__") = kEngineVersion;
  m.attr("GRAMMAR_FORMAT_VERSION") = kGrammarFormatVersion;

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<AlignmentError>(m, "AlignmentError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Dependency>(m, "Dependency")
      .def(py::init([](int head, std::string category, int slot, int argument, bool long_range) {
             return Dependency{head, std::move(category), slot, argument, long_range};
           }),
           py::arg("head"), py::arg("category"), py::arg("slot"), py::arg("argument"),
           py::arg("long_range") = false)
      .def_readonly("head", &Dependency::head)
      .def_readonly("category", &Dependency::category)
      .def_readonly("slot", &Dependency::slot)
      .def_readonly("argument", &Dependency::argument)
      .def_readonly("long_range", &Dependency::long_range)
      .def("__eq__", [](const Dependency& a, const Dependency& b) { return a == b; })
      .def("__hash__",
           [](const Dependency& d) {
             return py::hash(py::make_tuple(d.head, d.category, d.slot, d.argument, d.long_range));
           })
      .def("__repr__", [](const Dependency& d) {
        std::ostringstream o;
        o << "Dependency(" << d.head << ", '" << d.category << "', " << d.slot << ", "
          << d.argument << (d.long_range ? ", long_range=True" : "") << ")";
        return o.str();
      });

  m.def("parse_category", [](const std::string& text) { return ParseCategory(text).str(); },
        py::arg("text"), "Canonical form of a category string.");
  m.def(
      "unify",
      [](const std::string& a, const std::string& b) -> std::optional<std::string> {
        auto u = Unify(ParseCategory(a), ParseCategory(b));
        if (!u) return std::nullopt;
        return u->category.str();
      },
      py::arg("a"), py::arg("b"));

  py::class_<Grammar>(m, "Grammar")
      .def_static("load", &Grammar::LoadDirectory, py::arg("directory"))
      .def_static(
          "from_treebank",
          [](const std::string& treebank, const std::optional<std::string>& markedup,
             long min_count) {
            ExtractOptions opts;
            opts.min_count = min_count;
            Grammar g;
            g.tables = ExtractGrammar(LoadTreebank(treebank), opts);
            if (markedup) g.markedup = MarkedupTable::Load(*markedup);
            return g;
          },
          py::arg("treebank"), py::arg("markedup") = std::nullopt, py::arg("min_count") = 1)
      .def("save", [](const Grammar& g, const std::string& dir) { g.tables.SaveDirectory(dir); },
           py::arg("directory"))
      .def_property_readonly("lexicon", [](const Grammar& g) { return g.tables.lexicon; })
      .def_property_readonly("roots",
                             [](const Grammar& g) {
                               std::vector<std::string> out;
                               for (const auto& [k, v] : g.tables.roots) out.push_back(k);
                               return out;
                             })
      .def(
          "apply_binary",
          [](const Grammar& g, const std::string& left, const std::string& right, bool generic) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& r : ApplyBinary(ParseCategory(left), ParseCategory(right), g.tables,
                                             generic ? RuleMode::kGeneric : RuleMode::kSeenRules)) {
              out.emplace_back(r.result.str(), std::string(RuleKindName(r.kind)));
            }
            return out;
          },
          py::arg("left"), py::arg("right"), py::arg("generic") = false)
      .def(
          "apply_unary",
          [](const Grammar& g, const std::string& cat) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& r : ApplyUnary(ParseCategory(cat), g.tables)) {
              out.emplace_back(r.result.str(), std::string(RuleKindName(r.kind)));
            }
            return out;
          },
          py::arg("category"));

  m.def("decode", &DecodeSentence, py::arg("words"), py::arg("tags"), py::arg("grammar"),
        py::arg("spans") = std::nullopt, py::arg("beam") = 32, py::arg("w_st") = 1.0,
        py::arg("w_sp") = 1.0, py::arg("missing") = -1e4, py::arg("unary_depth") = 2,
        py::arg("any_root") = false,
        "Decode one sentence. `tags` holds (category, log-prob) pairs per word; `spans` "
        "holds (start, end, label, score) entries, or None for frequency scores.");

  m.def(
      "prune",
      [](const TagSet& entries, double gamma, int alpha, bool relative) {
        PruneConfig cfg;
        cfg.gamma = gamma;
        cfg.alpha = alpha;
        cfg.mode = relative ? ThresholdMode::kRelativeToBest : ThresholdMode::kAbsolute;
        cfg.Validate();
        TagDistribution d;
        d.entries = ToEntries(entries);
        d.Validate();
        TagSet out;
        for (const auto& e : Prune(d, cfg)) out.emplace_back(e.category, e.log_prob);
        return out;
      },
      py::arg("entries"), py::arg("gamma") = 0.0005, py::arg("alpha") = 10,
      py::arg("relative") = false);

  m.def(
      "gold_oracle",
      [](const std::string& treebank, const std::optional<std::string>& markedup) {
        MarkedupTable table;
        if (markedup) table = MarkedupTable::Load(*markedup);
        auto out = GoldOracle(LoadTreebank(treebank), table);
        py::dict d;
        d["tags"] = out.tags;
        d["spans"] = out.spans;
        d["deps"] = out.deps;
        d["skipped"] = out.skipped;
        return d;
      },
      py::arg("treebank"), py::arg("markedup") = std::nullopt);

  m.def(
      "evaluate",
      [](const std::string& gold, const std::string& test) {
        return ReportDict(Evaluate(ParseDepsFile(gold), ParseDepsFile(test)));
      },
      py::arg("gold"), py::arg("test"), "Evaluate two dependency-file texts.");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "ccgbeam");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a command-line invocation; returns (status, stdout, stderr).");
}
