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

#include "ccgbeam/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "ccgbeam/corpus.hpp"
#include "ccgbeam/errors.hpp"
#include "ccgbeam/eval.hpp"
#include "ccgbeam/pipeline.hpp"
#include "text_io.hpp"

namespace ccgbeam {
namespace {

namespace fs = std::filesystem;

void RequireFile(const std::string& path) {
  if (!fs::is_regular_file(path)) throw IoError("no such file: " + path);
}

void RequireDir(const std::string& path) {
  if (!fs::is_directory(path)) throw IoError("no such directory: " + path);
}

void EnsureDir(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec || !fs::is_directory(path)) throw IoError("cannot create directory " + path);
}

std::string Join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

ThresholdMode ParseMode(const std::string& mode) {
  return mode == "relative" ? ThresholdMode::kRelativeToBest : ThresholdMode::kAbsolute;
}

struct PruneFlags {
  double gamma = 0.0005;
  int alpha = 10;
  std::string mode = "absolute";

  void Add(CLI::App* app) {
    app->add_option("--gamma", gamma, "probability threshold")->capture_default_str();
    app->add_option("--alpha", alpha, "maximum categories per word")->capture_default_str();
    app->add_option("--gamma-mode", mode, "absolute or relative")
        ->check(CLI::IsMember({"absolute", "relative"}))
        ->capture_default_str();
  }
  PruneConfig Config() const { return {gamma, alpha, ParseMode(mode)}; }
};

struct DecodeFlags {
  std::string grammar, tags, spans;
  int beam = 32;
  double w_st = 1.0, w_sp = 1.0, missing = -1e4;
  long max_chart = 1000000;
  int unary_depth = 2;
  int workers = std::max(1u, std::thread::hardware_concurrency());
  bool any_root = false;
  std::vector<double> retry_gammas;
  PruneFlags prune;

  void Add(CLI::App* app, bool with_beam) {
    app->add_option("--grammar", grammar, "grammar directory")->required();
    app->add_option("--tags", tags, "tag-distribution file, - for standard input")->required();
    app->add_option("--spans", spans, "score-chart file");
    if (with_beam) app->add_option("--beam", beam, "beam width per cell")->capture_default_str();
    app->add_option("--w-st", w_st, "supertag score weight")->capture_default_str();
    app->add_option("--w-sp", w_sp, "span score weight")->capture_default_str();
    app->add_option("--missing-score", missing, "score of an unscored label")
        ->capture_default_str();
    app->add_option("--max-chart", max_chart, "generated items before skimming")
        ->capture_default_str();
    app->add_option("--unary-depth", unary_depth, "maximum unary chain length")
        ->capture_default_str();
    app->add_option("--workers", workers, "parallel workers");
    app->add_flag("--any-root", any_root, "accept any category spanning the sentence");
    app->add_option("--retry-gammas", retry_gammas, "gammas to retry with when skimmed")
        ->delimiter(',');
    prune.Add(app);
  }

  void Validate() const {
    RequireDir(grammar);
    if (tags != "-") RequireFile(tags);
    if (!spans.empty()) RequireFile(spans);
  }

  ParseOptions Options() const {
    ParseOptions o;
    o.prune = prune.Config();
    o.retry_gammas = retry_gammas;
    o.decode.beam = beam;
    o.decode.max_items = max_chart;
    o.decode.unary_depth = unary_depth;
    o.decode.any_root = any_root;
    o.score = {w_st, w_sp, missing};
    o.workers = workers;
    return o;
  }
};

int ExtractCommand(const std::string& treebank, const std::string& out_dir,
                   const std::string& markedup, const std::string& atoms, long min_count,
                   bool lenient, std::ostream& err) {
  RequireFile(treebank);
  if (!markedup.empty()) RequireFile(markedup);
  if (!atoms.empty()) RequireFile(atoms);
  ExtractOptions options;
  options.min_count = min_count;
  if (!atoms.empty()) options.registry = AtomRegistry::Parse(detail::ReadFile(atoms));
  std::vector<std::string> errors;
  const auto entries = LoadTreebank(treebank, options.registry, lenient, &errors);
  for (const auto& e : errors) err << "skipped: " << e << "\n";
  const GrammarTables tables = ExtractGrammar(entries, options);
  EnsureDir(out_dir);
  tables.SaveDirectory(out_dir);
  if (!markedup.empty()) {
    const std::string text = detail::ReadFile(markedup);
    MarkedupTable::Parse(text, options.registry);  // reject a broken file early
    detail::WriteFile(Join(out_dir, "markedup.txt"), text);
  }
  return kExitOk;
}

int ParseCommand(const DecodeFlags& flags, const std::string& output, const std::string& out_file,
                 std::ostream& out) {
  flags.Validate();
  const Grammar grammar = Grammar::LoadDirectory(flags.grammar);
  std::vector<TaggedSentence> sentences;
  if (flags.tags == "-") {
    std::stringstream buffer;
    buffer << std::cin.rdbuf();
    sentences = ParseTagFile(buffer.str());
  } else {
    sentences = LoadTagFile(flags.tags);
  }
  std::vector<ScoreChart> charts;
  if (!flags.spans.empty()) charts = LoadScoreCharts(flags.spans);
  const CorpusReport report = ParseCorpus(sentences, flags.spans.empty() ? nullptr : &charts,
                                          grammar, flags.Options());
  std::string text;
  if (output == "derivs" || output == "both") text += FormatDerivations(report.results);
  if (output == "both") text += "\n";
  if (output == "deps" || output == "both") {
    std::vector<SentenceDeps> deps;
    for (const auto& r : report.results) deps.push_back(ToSentenceDeps(r));
    text += FormatDepsFile(deps);
  }
  if (out_file.empty()) {
    out << text;
  } else {
    detail::WriteFile(out_file, text);
  }
  return kExitOk;
}

int EvaluateCommand(const std::string& gold_path, const std::string& test_path,
                    bool per_relation, const std::string& markedup_path, std::ostream& out) {
  RequireFile(gold_path);
  RequireFile(test_path);
  if (!markedup_path.empty()) RequireFile(markedup_path);
  const auto gold = LoadDepsFile(gold_path);
  const auto test = LoadDepsFile(test_path);
  out << FormatReport(Evaluate(gold, test));
  if (per_relation) {
    MarkedupTable markedup;
    if (!markedup_path.empty()) markedup = MarkedupTable::Load(markedup_path);
    out << "\n" << FormatRelations(PerRelation(gold, test, &markedup));
  }
  return kExitOk;
}

int PruneCommand(const std::string& tags, const std::string& gold_path, const PruneFlags& flags,
                 std::ostream& out) {
  RequireFile(tags);
  if (!gold_path.empty()) RequireFile(gold_path);
  const PruneConfig cfg = flags.Config();
  cfg.Validate();
  auto corpus = LoadTagFile(tags);
  if (!gold_path.empty()) {
    std::vector<std::vector<std::string>> gold;
    for (const auto& s : LoadDepsFile(gold_path)) gold.push_back(s.categories);
    const MultitagStats stats = AmbiguityAndAccuracy(corpus, gold, cfg);
    char buf[128];
    std::snprintf(buf, sizeof buf, "tokens %ld  cats/word %.3f  accuracy %.2f\n", stats.tokens,
                  stats.ambiguity, 100.0 * stats.accuracy);
    out << buf;
    return kExitOk;
  }
  for (auto& sentence : corpus) {
    for (auto& dist : sentence) dist.entries = Prune(dist, cfg);
  }
  out << FormatTagFile(corpus);
  return kExitOk;
}

int OracleCommand(const std::string& treebank, const std::string& out_dir,
                  const std::string& markedup_path, const std::string& grammar_dir,
                  std::ostream& err) {
  RequireFile(treebank);
  if (!markedup_path.empty()) RequireFile(markedup_path);
  if (!grammar_dir.empty()) RequireDir(grammar_dir);
  AtomRegistry registry = AtomRegistry::Default();
  MarkedupTable markedup;
  if (!grammar_dir.empty()) {
    Grammar g = Grammar::LoadDirectory(grammar_dir);
    registry = g.tables.registry;
    markedup = std::move(g.markedup);
  }
  if (!markedup_path.empty()) markedup = MarkedupTable::Load(markedup_path, registry);
  const auto entries = LoadTreebank(treebank, registry);
  const OracleOutput oracle = GoldOracle(entries, markedup);
  for (const auto& s : oracle.skipped) err << "skipped: " << s << "\n";
  EnsureDir(out_dir);
  detail::WriteFile(Join(out_dir, "tags.txt"), oracle.tags);
  detail::WriteFile(Join(out_dir, "spans.txt"), oracle.spans);
  detail::WriteFile(Join(out_dir, "gold.deps"), oracle.deps);
  return kExitOk;
}

int BenchCommand(const DecodeFlags& flags, const std::string& gold_path,
                 const std::vector<int>& beams, std::ostream& out) {
  flags.Validate();
  RequireFile(gold_path);
  const Grammar grammar = Grammar::LoadDirectory(flags.grammar);
  const auto sentences = LoadTagFile(flags.tags);
  std::vector<ScoreChart> charts;
  if (!flags.spans.empty()) charts = LoadScoreCharts(flags.spans);
  const auto gold = LoadDepsFile(gold_path);
  const auto rows = Bench(sentences, flags.spans.empty() ? nullptr : &charts, grammar, gold,
                          beams, flags.Options());
  out << FormatBench(rows);
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grammar-constrained CCG chart parser"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "print engine and grammar-format versions");

  std::string treebank, out_dir, markedup, atoms, grammar_dir;
  long min_count = 1;
  bool lenient = false;
  auto* extract = app.add_subcommand("extract-grammar", "extract grammar tables from a treebank");
  extract->add_option("--treebank", treebank, "treebank file")->required();
  extract->add_option("--out", out_dir, "output grammar directory")->required();
  extract->add_option("--markedup", markedup, "markedup file copied into the grammar");
  extract->add_option("--atoms", atoms, "atom registry file");
  extract->add_option("--min-count", min_count, "drop rarer lexical categories")
      ->capture_default_str();
  extract->add_flag("--lenient", lenient, "skip malformed trees");

  DecodeFlags parse_flags;
  std::string output = "deps", parse_out;
  auto* parse = app.add_subcommand("parse", "parse a tag-distribution file");
  parse_flags.Add(parse, true);
  parse->add_option("--output", output, "deps, derivs or both")
      ->check(CLI::IsMember({"deps", "derivs", "both"}))
      ->capture_default_str();
  parse->add_option("--out", parse_out, "write to this file instead of standard output");

  std::string gold, test;
  bool per_relation = false;
  auto* evaluate = app.add_subcommand("evaluate", "score test dependencies against gold");
  evaluate->add_option("--gold", gold, "gold dependency file")->required();
  evaluate->add_option("--test", test, "test dependency file")->required();
  evaluate->add_flag("--per-relation", per_relation, "add the per-relation table");
  evaluate->add_option("--markedup", markedup, "markedup file with relation names");

  std::string tags;
  PruneFlags prune_flags;
  auto* prune = app.add_subcommand("prune-tags", "apply gamma/alpha pruning to a tag file");
  prune->add_option("--tags", tags, "tag-distribution file")->required();
  prune->add_option("--gold", gold, "dependency file; prints ambiguity and accuracy instead");
  prune_flags.Add(prune);

  auto* oracle = app.add_subcommand("oracle", "gold tag, score and dependency files");
  oracle->add_option("--treebank", treebank, "treebank file")->required();
  oracle->add_option("--out", out_dir, "output directory")->required();
  oracle->add_option("--markedup", markedup, "markedup file");
  oracle->add_option("--grammar", grammar_dir, "grammar directory (registry and markedup)");

  DecodeFlags bench_flags;
  std::vector<int> beams{4, 8, 16, 32, 64};
  auto* bench = app.add_subcommand("bench", "beam-width speed/accuracy table");
  bench_flags.Add(bench, false);
  bench->add_option("--gold", gold, "gold dependency file")->required();
  bench->add_option("--beams", beams, "comma-separated beam widths")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (version) {
      out << "ccgbeam " << kEngineVersion << "\ngrammar format " << kGrammarFormatVersion << "\n";
      return kExitOk;
    }
    if (*extract) return ExtractCommand(treebank, out_dir, markedup, atoms, min_count, lenient, err);
    if (*parse) return ParseCommand(parse_flags, output, parse_out, out);
    if (*evaluate) return EvaluateCommand(gold, test, per_relation, markedup, out);
    if (*prune) return PruneCommand(tags, gold, prune_flags, out);
    if (*oracle) return OracleCommand(treebank, out_dir, markedup, grammar_dir, err);
    if (*bench) return BenchCommand(bench_flags, gold, beams, out);
    err << app.help();
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const AlignmentError& e) {
    err << "alignment error: " << e.what() << "\n";
    return kExitAlignment;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace ccgbeam
