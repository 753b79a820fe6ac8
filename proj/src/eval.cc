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

#include "emn/eval.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "emn/errors.h"
#include "parallel.h"
#include "str_util.h"

namespace emn {

namespace {

double Percent(size_t hits, size_t total) {
  return total == 0 ? 0.0
                    : 100.0 * static_cast<double>(hits) /
                          static_cast<double>(total);
}

void RequireGold(const std::vector<Tweet> &tweets) {
  if (tweets.empty()) throw EmptySetError("no evaluation tweets");
  for (const Tweet &t : tweets) {
    if (!t.gold_entity) {
      throw ConfigError("tweet '" + t.id + "' has no gold entity");
    }
  }
}

int GoldRank(const std::vector<CandidateScore> &candidates,
             const std::string &gold) {
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].entity_id == gold) return static_cast<int>(i) + 1;
  }
  return 0;
}

bool HasEntity(const Tweet &t) {
  return t.gold_entity.has_value() &&
         !(t.gold_label && *t.gold_label == GoldLabel::kNil);
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

// ----------------------------------------------------------------------------
// Folds

FoldPlan FoldPlan::Make(const std::vector<Tweet> &tweets, int folds,
                        uint64_t seed) {
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (tweets.empty()) throw EmptySetError("no tweets to split into folds");
  std::vector<size_t> order(tweets.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  SeededShuffle(&order, seed);

  FoldPlan plan;
  plan.folds = folds;
  for (size_t pos = 0; pos < order.size(); ++pos) {
    const std::string &id = tweets[order[pos]].id;
    if (!plan.assignments.emplace(id, static_cast<int>(pos % folds)).second) {
      throw DuplicateIdError(id, 0);
    }
  }
  return plan;
}

std::vector<size_t> FoldPlan::FoldSizes() const {
  std::vector<size_t> sizes(folds, 0);
  for (const auto &[id, fold] : assignments) ++sizes[fold];
  return sizes;
}

// ----------------------------------------------------------------------------
// Recall and cross-validation

std::vector<Tweet> ImplicitGold(const std::vector<Tweet> &tweets) {
  std::vector<Tweet> out;
  for (const Tweet &t : tweets) {
    if (!t.gold_entity || t.gold_entity->empty()) continue;
    if (t.gold_label && *t.gold_label != GoldLabel::kImplicit) continue;
    out.push_back(t);
  }
  return out;
}

EvalReport RecallAtK(const Linker &linker, const std::vector<Tweet> &tweets,
                     int k) {
  if (k < 1) throw ConfigError("k must be >= 1");
  RequireGold(tweets);
  EvalReport report;
  report.k = k;
  report.tweets = tweets.size();
  size_t hits = 0;
  for (const Tweet &t : tweets) {
    Prediction p;
    p.tweet_id = t.id;
    p.gold = *t.gold_entity;
    try {
      p.gold_rank =
          GoldRank(SelectCandidates(linker.graph(), linker.Clues(t.text), k),
                   p.gold);
    } catch (const NoCandidateError &) {
      p.gold_rank = 0;
    }
    if (p.gold_rank > 0) ++hits;
    report.predictions.push_back(std::move(p));
  }
  report.recall_at_k = Percent(hits, tweets.size());
  return report;
}

EvalReport CrossValidate(const Linker &linker, const std::vector<Tweet> &tweets,
                         const CrossValidationOptions &options) {
  RequireGold(tweets);
  const FoldPlan plan = FoldPlan::Make(tweets, options.folds, options.seed);

  // Candidate selection and features do not depend on the fold.
  std::vector<std::optional<PreparedQuery>> prepared(tweets.size());
  ParallelFor(tweets.size(), options.threads, [&](size_t i) {
    try {
      prepared[i] = linker.Prepare(tweets[i].text);
    } catch (const NoCandidateError &) {
      prepared[i].reset();
    }
  });

  std::vector<int> fold_of(tweets.size());
  for (size_t i = 0; i < tweets.size(); ++i) {
    fold_of[i] = plan.assignments.at(tweets[i].id);
  }

  std::vector<FoldResult> folds(options.folds);
  std::vector<std::string> predicted(tweets.size());
  ParallelFor(options.folds, options.threads, [&](size_t fold_index) {
    const int fold = static_cast<int>(fold_index);
    FoldResult &result = folds[fold];
    result.fold = fold;

    std::vector<RankingQuery> queries;
    for (size_t i = 0; i < tweets.size(); ++i) {
      if (fold_of[i] == fold) continue;
      RankingQuery q;
      if (prepared[i] &&
          ToRankingQuery(tweets[i].id, *prepared[i], *tweets[i].gold_entity,
                         &q)) {
        queries.push_back(std::move(q));
      } else {
        ++result.skipped;
      }
    }
    TrainStats stats;
    TrainedRanker ranker;
    try {
      ranker = TrainPairwise(queries, options.train, &stats);
    } catch (const InsufficientDataError &e) {
      throw InsufficientDataError(e.what(), fold);
    }
    result.train_queries = stats.queries;
    result.train_pairs = stats.pairs;
    result.swapped_pairs = stats.swapped_pairs;

    for (size_t i = 0; i < tweets.size(); ++i) {
      if (fold_of[i] != fold) continue;
      ++result.evaluated;
      if (!prepared[i]) continue;
      auto ranked = Rank(ranker, prepared[i]->features);
      predicted[i] = ranked.front().entity_id;
      if (predicted[i] == *tweets[i].gold_entity) ++result.correct;
    }
    result.accuracy = Percent(result.correct, result.evaluated);
  });

  EvalReport report;
  report.k = linker.options().k;
  report.tweets = tweets.size();
  size_t hits = 0;
  size_t correct = 0;
  for (size_t i = 0; i < tweets.size(); ++i) {
    Prediction p;
    p.tweet_id = tweets[i].id;
    p.fold = fold_of[i];
    p.gold = *tweets[i].gold_entity;
    p.gold_rank = prepared[i] ? GoldRank(prepared[i]->candidates, p.gold) : 0;
    p.predicted = predicted[i];
    if (p.gold_rank > 0) ++hits;
    if (p.predicted == p.gold) ++correct;
    report.predictions.push_back(std::move(p));
  }
  report.recall_at_k = Percent(hits, tweets.size());
  report.disambiguation_accuracy = Percent(correct, tweets.size());
  report.per_fold = std::move(folds);
  return report;
}

AblationReport AblateContext(const Corpora &corpora, const BuildOptions &build,
                             const std::vector<Tweet> &gold, LinkOptions link,
                             const CrossValidationOptions &cv) {
  auto run = [&](bool include_context) {
    BuildOptions options = build;
    options.include_context = include_context;
    EmnGraph graph = BuildEmn(corpora, options);
    Linker linker(graph, corpora.dict, corpora.stopwords, link);
    return CrossValidate(linker, gold, cv);
  };
  AblationReport report;
  report.with_context = run(true);
  report.without_context = run(false);
  return report;
}

// ----------------------------------------------------------------------------
// Combined EL + IEL

std::optional<std::string> ExplicitLinkerStub::Lookup(
    const std::string &tweet_id) const {
  auto it = annotations.find(tweet_id);
  if (it == annotations.end()) return std::nullopt;
  return it->second;
}

ExplicitLinkerStub ExplicitLinkerStub::Read(std::istream &in) {
  ExplicitLinkerStub stub;
  std::string line;
  size_t lineno = 0;
  while (str::GetLine(in, &line)) {
    ++lineno;
    if (str::Trim(line).empty()) continue;
    auto cols = str::SplitTabs(line);
    if (cols.size() != 2) {
      throw FormatError("expected 2 columns, got " + std::to_string(cols.size()),
                        lineno);
    }
    std::string id(str::Trim(cols[0]));
    std::string entity(str::Trim(cols[1]));
    if (id.empty()) throw FormatError("empty tweet id", lineno);
    if (entity.empty()) continue;
    if (!stub.annotations.emplace(id, entity).second) {
      throw DuplicateIdError(id, lineno);
    }
  }
  return stub;
}

ExplicitLinkerStub ExplicitLinkerStub::LoadFromFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return Read(in);
}

void ExplicitLinkerStub::Write(std::ostream &out) const {
  for (const auto &[id, entity] : annotations) {
    out << id << '\t' << entity << '\n';
  }
}

PrfScores ComputePrf(size_t correct, size_t annotated, size_t with_entity) {
  PrfScores s;
  s.correct = correct;
  s.annotated = annotated;
  s.with_entity = with_entity;
  s.precision = annotated == 0 ? 0.0
                               : static_cast<double>(correct) /
                                     static_cast<double>(annotated);
  s.recall = with_entity == 0 ? 0.0
                              : static_cast<double>(correct) /
                                    static_cast<double>(with_entity);
  s.f1 = s.precision + s.recall == 0.0
             ? 0.0
             : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

CombinedReport CombinedF1(const ExplicitLinkerStub &stub,
                          const std::vector<Tweet> &mixed,
                          const Linker &linker, const TrainedRanker &ranker) {
  if (mixed.empty()) throw EmptySetError("no tweets in the mixed set");
  CombinedReport report;
  size_t with_entity = 0;
  size_t el_annotated = 0, el_correct = 0;
  size_t all_annotated = 0, all_correct = 0;
  for (const Tweet &t : mixed) {
    CombinedPrediction p;
    p.tweet_id = t.id;
    bool has_entity = HasEntity(t);
    if (has_entity) {
      p.gold = *t.gold_entity;
      ++with_entity;
    }
    if (auto el = stub.Lookup(t.id)) p.el = *el;
    p.el_iel = p.el;
    if (p.el_iel.empty()) {
      try {
        auto ranked = linker.Link(ranker, LinkRequest{"", t.text});
        if (!ranked.empty()) p.el_iel = ranked.front().entity_id;
      } catch (const NoCandidateError &) {
      }
    }
    if (!p.el.empty()) {
      ++el_annotated;
      if (has_entity && p.el == p.gold) ++el_correct;
    }
    if (!p.el_iel.empty()) {
      ++all_annotated;
      if (has_entity && p.el_iel == p.gold) ++all_correct;
    }
    report.predictions.push_back(std::move(p));
  }
  report.el = ComputePrf(el_correct, el_annotated, with_entity);
  report.el_iel = ComputePrf(all_correct, all_annotated, with_entity);
  return report;
}

MixedDataset MixDataset(const std::vector<Tweet> &labeled,
                        const MixOptions &options) {
  if (options.test_fraction < 0.0 || options.test_fraction > 1.0 ||
      options.explicit_per_implicit < 0.0 || options.nil_fraction < 0.0) {
    throw ConfigError("invalid mixing proportions");
  }
  std::vector<Tweet> implicit, explicit_, nil;
  for (const Tweet &t : labeled) {
    if (!t.gold_label) continue;
    switch (*t.gold_label) {
      case GoldLabel::kImplicit:
        if (t.gold_entity) implicit.push_back(t);
        break;
      case GoldLabel::kExplicit:
        if (t.gold_entity) explicit_.push_back(t);
        break;
      case GoldLabel::kNil:
        nil.push_back(t);
        break;
    }
  }
  SeededShuffle(&implicit, options.seed);
  SeededShuffle(&explicit_, options.seed + 1);
  SeededShuffle(&nil, options.seed + 2);

  auto take = [](double n, size_t available) {
    return std::min(available, static_cast<size_t>(std::floor(n)));
  };
  size_t n_implicit = take(options.test_fraction * implicit.size(),
                           implicit.size());
  size_t n_explicit =
      take(options.explicit_per_implicit * n_implicit, explicit_.size());
  size_t n_nil =
      take(options.nil_fraction * (n_implicit + n_explicit), nil.size());

  MixedDataset mixed;
  mixed.test.assign(implicit.begin(), implicit.begin() + n_implicit);
  mixed.train_implicit.assign(implicit.begin() + n_implicit, implicit.end());
  mixed.test.insert(mixed.test.end(), explicit_.begin(),
                    explicit_.begin() + n_explicit);
  mixed.test.insert(mixed.test.end(), nil.begin(), nil.begin() + n_nil);
  return mixed;
}

// ----------------------------------------------------------------------------
// Output

void WritePredictions(std::ostream &out,
                      const std::vector<Prediction> &predictions) {
  out << "tweet_id\tfold\tgold\tgold_rank\tpredicted\n";
  for (const Prediction &p : predictions) {
    out << p.tweet_id << '\t' << p.fold << '\t' << p.gold << '\t'
        << p.gold_rank << '\t' << p.predicted << '\n';
  }
}

void WriteCombinedPredictions(
    std::ostream &out, const std::vector<CombinedPrediction> &predictions) {
  out << "tweet_id\tgold\tel\tel_iel\n";
  for (const CombinedPrediction &p : predictions) {
    out << p.tweet_id << '\t' << p.gold << '\t' << p.el << '\t' << p.el_iel
        << '\n';
  }
}

void WriteReportTsv(std::ostream &out, const std::string &name,
                    const EvalReport &report) {
  out << "report\t" << name << '\n';
  out << "tweets\t" << report.tweets << '\n';
  out << "k\t" << report.k << '\n';
  out << "recall_at_k\t" << str::FormatDouble(report.recall_at_k) << '\n';
  if (report.disambiguation_accuracy) {
    out << "disambiguation_accuracy\t"
        << str::FormatDouble(*report.disambiguation_accuracy) << '\n';
  }
  for (const FoldResult &f : report.per_fold) {
    std::string prefix = "fold" + std::to_string(f.fold) + "_";
    out << prefix << "evaluated\t" << f.evaluated << '\n';
    out << prefix << "correct\t" << f.correct << '\n';
    out << prefix << "accuracy\t" << str::FormatDouble(f.accuracy) << '\n';
    out << prefix << "train_pairs\t" << f.train_pairs << '\n';
    out << prefix << "skipped\t" << f.skipped << '\n';
    out << prefix << "swapped_pairs\t" << f.swapped_pairs << '\n';
  }
}

void WriteCombinedTsv(std::ostream &out, const CombinedReport &report) {
  auto write = [&](const std::string &name, const PrfScores &s) {
    out << name << "_precision\t" << str::FormatDouble(s.precision) << '\n';
    out << name << "_recall\t" << str::FormatDouble(s.recall) << '\n';
    out << name << "_f1\t" << str::FormatDouble(s.f1) << '\n';
  };
  out << "report\tcombined\n";
  out << "tweets\t" << report.predictions.size() << '\n';
  write("el", report.el);
  write("el_iel", report.el_iel);
}

void PrintReportTable(std::ostream &out, const std::string &name,
                      const EvalReport &report) {
  out << "== " << name << " (" << report.tweets << " tweets, k=" << report.k
      << ")\n";
  out << "  candidate selection recall@" << report.k << ": "
      << Fixed(report.recall_at_k, 2) << "\n";
  if (report.disambiguation_accuracy) {
    out << "  disambiguation accuracy:     "
        << Fixed(*report.disambiguation_accuracy, 2) << "\n";
  }
  if (!report.per_fold.empty()) {
    out << "  fold  evaluated  correct  accuracy  pairs  skipped\n";
    for (const FoldResult &f : report.per_fold) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "  %4d  %9zu  %7zu  %8.2f  %5zu  %7zu\n",
                    f.fold, f.evaluated, f.correct, f.accuracy, f.train_pairs,
                    f.skipped);
      out << buf;
    }
  }
}

void PrintCombinedTable(std::ostream &out, const CombinedReport &report) {
  out << "== combined (" << report.predictions.size() << " tweets)\n";
  out << "            precision  recall  f1\n";
  auto row = [&](const char *name, const PrfScores &s) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "  %-8s  %9.4f  %6.4f  %.4f\n", name,
                  s.precision, s.recall, s.f1);
    out << buf;
  };
  row("EL", report.el);
  row("EL+IEL", report.el_iel);
}

}  // namespace emn
