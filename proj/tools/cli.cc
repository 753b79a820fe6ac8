// Copyright 2026 The EMN Linker Authors.
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

#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "emn/config.h"
#include "emn/corpus.h"
#include "emn/errors.h"
#include "emn/eval.h"
#include "emn/graph.h"
#include "emn/linker.h"
#include "emn/pipeline.h"
#include "emn/ranker.h"

namespace emn {

namespace {

// Command line options that mirror config keys. Values are collected as
// strings and applied on top of the config file after parsing.
class OptionSet {
 public:
  void Add(CLI::App *app, const std::string &flag, const std::string &key,
           const std::string &help) {
    values_.emplace_back();
    CLI::Option *opt = app->add_option(flag, values_.back(), help);
    bound_.push_back({opt, key, &values_.back(), false});
  }

  void AddFlag(CLI::App *app, const std::string &flag, const std::string &key,
               const std::string &help) {
    CLI::Option *opt = app->add_flag(flag, help);
    bound_.push_back({opt, key, nullptr, true});
  }

  void ApplyTo(Config *config) const {
    for (const Bound &b : bound_) {
      if (b.option->count() == 0) continue;
      config->Set(b.key, b.is_flag ? "true" : *b.value);
    }
  }

 private:
  struct Bound {
    CLI::Option *option;
    std::string key;
    const std::string *value;
    bool is_flag;
  };
  std::deque<std::string> values_;
  std::vector<Bound> bound_;
};

void Require(const std::string &value, const char *flag) {
  if (value.empty()) throw ConfigError(std::string(flag) + " is required");
}

std::ofstream OpenOutput(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

struct TextResources {
  PhraseDictionary dict;
  StopwordSet stopwords;
};

TextResources LoadTextResources(const Config &c) {
  TextResources r;
  if (!c.phrases.empty()) r.dict = LoadPhraseDictionary(c.phrases);
  if (!c.stopwords.empty()) r.stopwords = LoadStopwords(c.stopwords);
  return r;
}

Corpora LoadCorpora(const Config &c) {
  Require(c.labels, "--labels");
  Require(c.tweets, "--tweets");
  Corpora corpora;
  corpora.records = LoadEntityRecords(c.labels);
  corpora.pool = LoadTweets(c.tweets);
  if (!c.triples.empty()) corpora.triples = LoadTriples(c.triples);
  if (!c.pageviews.empty()) corpora.page_views = LoadPageViews(c.pageviews);
  TextResources text = LoadTextResources(c);
  corpora.dict = std::move(text.dict);
  corpora.stopwords = std::move(text.stopwords);
  return corpora;
}

void EmitReport(const Config &c, const std::string &format,
                const std::string &name, const EvalReport &report,
                std::ostream &out) {
  if (format == "tsv") {
    WriteReportTsv(out, name, report);
  } else {
    PrintReportTable(out, name, report);
  }
  if (!c.report.empty()) {
    auto file = OpenOutput(c.report);
    WriteReportTsv(file, name, report);
  }
  if (!c.dump.empty()) {
    auto file = OpenOutput(c.dump);
    WritePredictions(file, report.predictions);
  }
}

// ----------------------------------------------------------------------------
// Subcommands

int BuildEmnCommand(const Config &c, std::ostream &out) {
  Require(c.out, "--out");
  BuildOptions options = c.ToBuildOptions();
  Corpora corpora = LoadCorpora(c);
  BuildReport report;
  EmnGraph graph = BuildEmn(corpora, options, &report);
  graph.SaveToFile(c.out);
  out << "entities\t" << graph.num_entities() << '\n';
  out << "clues\t" << graph.num_clues() << '\n';
  out << "edges\t" << graph.num_edges() << '\n';
  out << "spotted\t" << report.spotted.size() << '\n';
  out << "empty_models\t" << report.empty_models.size() << '\n';
  out << "top_relations\t";
  for (size_t i = 0; i < report.top_relations.size(); ++i) {
    out << (i > 0 ? "," : "") << report.top_relations[i];
  }
  out << '\n';
  return 0;
}

int TrainCommand(const Config &c, std::ostream &out) {
  Require(c.emn, "--emn");
  Require(c.gold, "--tweets");
  Require(c.out, "--out");
  EmnGraph graph = EmnGraph::LoadFromFile(c.emn);
  TextResources text = LoadTextResources(c);
  Linker linker(graph, text.dict, text.stopwords, c.ToLinkOptions());
  std::vector<Tweet> gold = ImplicitGold(LoadTweets(c.gold));
  TrainingSummary summary;
  TrainedRanker ranker =
      TrainFromTweets(linker, gold, c.ToTrainOptions(), &summary);
  ranker.SaveToFile(c.out);
  out << "queries\t" << summary.stats.queries << '\n';
  out << "pairs\t" << summary.stats.pairs << '\n';
  out << "skipped\t" << summary.stats.skipped << '\n';
  out << "swapped_pairs\t" << summary.stats.swapped_pairs << '\n';
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", summary.stats.loss_history.back());
  out << "final_loss\t" << buf << '\n';
  return 0;
}

int LinkCommand(const Config &c, const std::string &text_arg,
                std::ostream &out) {
  Require(c.emn, "--emn");
  Require(c.ranker, "--ranker");
  Require(text_arg, "--text");
  EmnGraph graph = EmnGraph::LoadFromFile(c.emn);
  TrainedRanker ranker = TrainedRanker::LoadFromFile(c.ranker);
  TextResources text = LoadTextResources(c);
  Linker linker(graph, text.dict, text.stopwords, c.ToLinkOptions());
  auto ranked = linker.Link(ranker, LinkRequest{c.entity_type, text_arg});
  size_t n = std::min(ranked.size(), static_cast<size_t>(c.top));
  for (size_t i = 0; i < n; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", ranked[i].score);
    out << ranked[i].entity_id << '\t' << buf << '\n';
  }
  return 0;
}

int InspectCommand(const Config &c, const std::string &entity,
                   std::ostream &out) {
  Require(c.emn, "--emn");
  EmnGraph graph = EmnGraph::LoadFromFile(c.emn);
  if (entity.empty()) {
    out << "built_at\t" << FormatDate(graph.built_at()) << '\n';
    out << "entity_type\t" << graph.entity_type() << '\n';
    out << "entities\t" << graph.num_entities() << '\n';
    out << "clues\t" << graph.num_clues() << '\n';
    out << "edges\t" << graph.num_edges() << '\n';
    return 0;
  }
  auto index = graph.FindEntity(entity);
  if (!index) throw UnknownEntityError(entity);
  const EntityNode &node = graph.entities()[*index];
  out << "# " << node.entity_id << '\t' << node.name << "\tsalience="
      << node.salience << '\n';
  out << "clue\torigin\tspecificity\tfrequency\tweight\n";
  struct Row {
    const ClueNode *clue;
    int64_t frequency;
    double weight;
  };
  std::vector<Row> rows;
  for (const Posting &p : graph.EntityEdges(*index)) {
    const ClueNode &clue = graph.clues()[p.node];
    rows.push_back({&clue, p.frequency,
                    clue.specificity * static_cast<double>(p.frequency)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
    return a.weight > b.weight;
  });
  size_t n = std::min(rows.size(), static_cast<size_t>(c.top));
  for (size_t i = 0; i < n; ++i) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.6f\t%lld\t%.6f",
                  rows[i].clue->specificity,
                  static_cast<long long>(rows[i].frequency), rows[i].weight);
    out << rows[i].clue->name << '\t' << FormatOrigin(rows[i].clue->origin)
        << '\t' << buf << '\n';
  }
  return 0;
}

int EvalRecallCommand(const Config &c, const std::string &format,
                      std::ostream &out) {
  Require(c.emn, "--emn");
  Require(c.gold, "--gold");
  EmnGraph graph = EmnGraph::LoadFromFile(c.emn);
  TextResources text = LoadTextResources(c);
  Linker linker(graph, text.dict, text.stopwords, c.ToLinkOptions());
  EvalReport report =
      RecallAtK(linker, ImplicitGold(LoadTweets(c.gold)), c.k);
  EmitReport(c, format, "recall", report, out);
  return 0;
}

int EvalCvCommand(const Config &c, const std::string &format,
                  std::ostream &out) {
  Require(c.emn, "--emn");
  Require(c.gold, "--gold");
  EmnGraph graph = EmnGraph::LoadFromFile(c.emn);
  TextResources text = LoadTextResources(c);
  Linker linker(graph, text.dict, text.stopwords, c.ToLinkOptions());
  EvalReport report =
      CrossValidate(linker, ImplicitGold(LoadTweets(c.gold)),
                    c.ToCrossValidationOptions());
  EmitReport(c, format, "cv", report, out);
  return 0;
}

int EvalAblateCommand(const Config &c, const std::string &format,
                      std::ostream &out) {
  Require(c.gold, "--gold");
  BuildOptions build = c.ToBuildOptions();
  Corpora corpora = LoadCorpora(c);
  std::vector<Tweet> gold = ImplicitGold(LoadTweets(c.gold));
  AblationReport report = AblateContext(corpora, build, gold, c.ToLinkOptions(),
                                        c.ToCrossValidationOptions());
  auto emit = [&](std::ostream &o) {
    if (format == "tsv") {
      WriteReportTsv(o, "with_context", report.with_context);
      WriteReportTsv(o, "without_context", report.without_context);
    } else {
      PrintReportTable(o, "with contextual knowledge", report.with_context);
      PrintReportTable(o, "without contextual knowledge",
                       report.without_context);
    }
  };
  emit(out);
  if (!c.report.empty()) {
    auto file = OpenOutput(c.report);
    WriteReportTsv(file, "with_context", report.with_context);
    WriteReportTsv(file, "without_context", report.without_context);
  }
  if (!c.dump.empty()) {
    auto file = OpenOutput(c.dump);
    WritePredictions(file, report.with_context.predictions);
    auto without = OpenOutput(c.dump + ".without_context");
    WritePredictions(without, report.without_context.predictions);
  }
  return 0;
}

int EvalCombinedCommand(const Config &c, const std::string &format,
                        std::ostream &out) {
  Require(c.emn, "--emn");
  Require(c.gold, "--gold");
  Require(c.stub, "--stub");
  EmnGraph graph = EmnGraph::LoadFromFile(c.emn);
  TextResources text = LoadTextResources(c);
  Linker linker(graph, text.dict, text.stopwords, c.ToLinkOptions());
  std::vector<Tweet> gold = LoadTweets(c.gold);
  ExplicitLinkerStub stub = ExplicitLinkerStub::LoadFromFile(c.stub);

  // With a trained ranker the gold file is the mixed set; otherwise the
  // mixed set is sampled and the ranker trained on the held-out implicit
  // tweets.
  std::vector<Tweet> mixed;
  TrainedRanker ranker;
  if (!c.ranker.empty()) {
    ranker = TrainedRanker::LoadFromFile(c.ranker);
    mixed = std::move(gold);
  } else {
    MixedDataset split = MixDataset(gold, c.ToMixOptions());
    ranker = TrainFromTweets(linker, split.train_implicit, c.ToTrainOptions());
    mixed = std::move(split.test);
  }
  CombinedReport report = CombinedF1(stub, mixed, linker, ranker);
  if (format == "tsv") {
    WriteCombinedTsv(out, report);
  } else {
    PrintCombinedTable(out, report);
  }
  if (!c.report.empty()) {
    auto file = OpenOutput(c.report);
    WriteCombinedTsv(file, report);
  }
  if (!c.dump.empty()) {
    auto file = OpenOutput(c.dump);
    WriteCombinedPredictions(file, report.predictions);
  }
  return 0;
}

}  // namespace

int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Implicit entity linking with an Entity Model Network",
               "emn-linker"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string format = "table";
  std::string text_arg;
  std::string entity_arg;
  OptionSet options;

  app.add_option("--config", config_path,
                 "key = value config file; explicit flags take precedence");
  options.Add(&app, "--threads", "threads", "Worker thread cap");

  auto add_text = [&](CLI::App *sub) {
    options.Add(sub, "--phrases", "phrases", "Anchor text / title dictionary");
    options.Add(sub, "--stopwords", "stopwords", "Stop word list");
  };
  auto add_knowledge = [&](CLI::App *sub) {
    options.Add(sub, "--triples", "triples", "Knowledge base triples (TSV)");
    options.Add(sub, "--labels", "labels", "Entity labels (TSV)");
    options.Add(sub, "--tweets", "tweets", "Recent tweet pool (JSONL)");
    options.Add(sub, "--pageviews", "pageviews", "Page view counts (TSV)");
    add_text(sub);
    options.Add(sub, "--as-of", "as_of_date", "EMN date, YYYY-MM-DD");
    options.Add(sub, "--type", "entity_type", "Domain entity type");
    options.Add(sub, "--type-keywords", "type_keywords",
                "Comma-separated type keywords, e.g. movie,film");
    options.Add(sub, "--m-relations", "m_relations", "Top relations kept");
    options.Add(sub, "--context-cap", "context_cap",
                "Contextual tweets per entity");
    options.Add(sub, "--salience-window-days", "salience_window_days",
                "Page view window");
    options.AddFlag(sub, "--no-context", "no_context",
                    "Build models from factual knowledge only");
  };
  auto add_training = [&](CLI::App *sub) {
    options.Add(sub, "--c", "c_tradeoff", "Trade-off between error and margin");
    options.Add(sub, "--seed", "seed", "Random seed");
    options.Add(sub, "--epochs", "epochs", "Optimizer epochs");
    options.Add(sub, "--learning-rate", "learning_rate", "Base step size");
    options.Add(sub, "--batch-size", "batch_size", "Pairs per update");
  };
  auto add_linking = [&](CLI::App *sub) {
    options.Add(sub, "--k", "k", "Candidates kept after selection");
    options.Add(sub, "--tweet-weighting", "tweet_weighting", "binary or tf");
  };
  auto add_report = [&](CLI::App *sub) {
    sub->add_option("--format", format, "Standard output format: table or tsv")
        ->check(CLI::IsMember({"table", "tsv"}));
    options.Add(sub, "--report", "report", "Write metrics TSV here");
    options.Add(sub, "--dump", "dump", "Write per-tweet predictions here");
  };

  CLI::App *build = app.add_subcommand("build-emn", "Build an EMN snapshot");
  add_knowledge(build);
  options.Add(build, "--out", "out", "Snapshot path");

  CLI::App *train = app.add_subcommand("train", "Train the pairwise ranker");
  options.Add(train, "--emn", "emn", "EMN snapshot");
  options.Add(train, "--tweets,--gold", "gold", "Gold tweets (JSONL)");
  options.Add(train, "--out", "out", "Model path");
  add_text(train);
  add_linking(train);
  add_training(train);

  CLI::App *link = app.add_subcommand("link", "Link one tweet");
  options.Add(link, "--emn", "emn", "EMN snapshot");
  options.Add(link, "--ranker", "ranker", "Trained model");
  options.Add(link, "--type", "entity_type", "Entity type of the request");
  link->add_option("--text", text_arg, "Tweet text");
  options.Add(link, "--top", "top", "Rows printed");
  add_text(link);
  add_linking(link);

  CLI::App *inspect =
      app.add_subcommand("inspect", "Dump an entity model or graph summary");
  options.Add(inspect, "--emn", "emn", "EMN snapshot");
  inspect->add_option("--entity", entity_arg, "Entity id");
  options.Add(inspect, "--top", "top", "Rows printed");

  CLI::App *eval = app.add_subcommand("eval", "Evaluation protocols");
  eval->require_subcommand(1);
  CLI::App *recall = eval->add_subcommand("recall", "Candidate recall@k");
  CLI::App *cv = eval->add_subcommand("cv", "Cross-validated accuracy");
  CLI::App *ablate = eval->add_subcommand("ablate", "Contextual ablation");
  CLI::App *combined =
      eval->add_subcommand("combined", "EL and EL+IEL precision/recall/F1");
  for (CLI::App *sub : {recall, cv, combined}) {
    options.Add(sub, "--emn", "emn", "EMN snapshot");
    add_text(sub);
  }
  for (CLI::App *sub : {recall, cv, ablate, combined}) {
    options.Add(sub, "--gold", "gold", "Gold tweets (JSONL)");
    add_linking(sub);
    add_report(sub);
  }
  for (CLI::App *sub : {cv, ablate, combined}) {
    options.Add(sub, "--folds", "folds", "Cross-validation folds");
    add_training(sub);
  }
  add_knowledge(ablate);
  options.Add(combined, "--stub", "stub", "Explicit linker output (TSV)");
  options.Add(combined, "--ranker", "ranker",
              "Trained model; without it one is trained on the mix split");
  options.Add(combined, "--test-fraction", "test_fraction",
              "Implicit tweets held out for testing");
  options.Add(combined, "--explicit-ratio", "explicit_ratio",
              "Explicit tweets per implicit test tweet");
  options.Add(combined, "--nil-fraction", "nil_fraction",
              "NIL tweets added relative to the test set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    Config config;
    if (!config_path.empty()) config.ApplyFile(config_path);
    options.ApplyTo(&config);

    if (build->parsed()) return BuildEmnCommand(config, out);
    if (train->parsed()) return TrainCommand(config, out);
    if (link->parsed()) return LinkCommand(config, text_arg, out);
    if (inspect->parsed()) return InspectCommand(config, entity_arg, out);
    if (recall->parsed()) return EvalRecallCommand(config, format, out);
    if (cv->parsed()) return EvalCvCommand(config, format, out);
    if (ablate->parsed()) return EvalAblateCommand(config, format, out);
    if (combined->parsed()) return EvalCombinedCommand(config, format, out);
    err << app.help();
    return 2;
  } catch (const ConfigError &e) {
    err << "emn-linker: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    err << "emn-linker: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace emn
