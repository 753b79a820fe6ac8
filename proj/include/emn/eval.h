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

// Evaluation protocol: candidate selection recall@k, k-fold cross-validated
// disambiguation accuracy, the contextual knowledge ablation and combined
// explicit + implicit linking precision / recall / F1.
//
// Every evaluation can dump its per-tweet predictions as TSV so that the
// reported numbers can be recomputed from the dump alone.

#ifndef EMN_EVAL_H_
#define EMN_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "emn/corpus.h"
#include "emn/linker.h"
#include "emn/pipeline.h"
#include "emn/ranker.h"

namespace emn {

inline constexpr int kDefaultFolds = 5;

// Seeded, balanced assignment of tweets to folds: fold sizes differ by at
// most one.
struct FoldPlan {
  int folds = kDefaultFolds;
  std::map<std::string, int> assignments;

  // Throws ConfigError if folds < 2, EmptySetError for no tweets.
  static FoldPlan Make(const std::vector<Tweet> &tweets, int folds,
                       uint64_t seed);
  std::vector<size_t> FoldSizes() const;
};

// One evaluated tweet. gold_rank is the 1-based position of the gold entity
// in the top-k candidates, 0 when absent. predicted is the top-ranked entity
// after disambiguation, empty when there is none (or disambiguation was not
// run).
struct Prediction {
  std::string tweet_id;
  int fold = -1;
  std::string gold;
  int gold_rank = 0;
  std::string predicted;

  bool operator==(const Prediction &) const = default;
};

struct FoldResult {
  int fold = 0;
  size_t evaluated = 0;
  size_t correct = 0;
  size_t train_queries = 0;
  size_t train_pairs = 0;
  size_t skipped = 0;
  size_t swapped_pairs = 0;
  double accuracy = 0.0;
};

struct EvalReport {
  int k = kDefaultCandidates;
  size_t tweets = 0;
  double recall_at_k = 0.0;
  std::optional<double> disambiguation_accuracy;
  std::vector<FoldResult> per_fold;
  std::vector<Prediction> predictions;
};

// Tweets usable as implicit linking gold: a gold entity and either the
// implicit label or no label at all. Input order is kept.
std::vector<Tweet> ImplicitGold(const std::vector<Tweet> &tweets);

// Percentage of tweets whose gold entity is among the top-k candidates. A
// tweet without candidates is a miss. Throws EmptySetError for no tweets and
// ConfigError for a tweet without gold entity.
EvalReport RecallAtK(const Linker &linker, const std::vector<Tweet> &tweets,
                     int k);

struct CrossValidationOptions {
  int folds = kDefaultFolds;
  uint64_t seed = 7;
  TrainOptions train;
  int threads = 1;
};

// For every fold, trains on the other folds and scores rank-1 accuracy on the
// fold; accuracy is pooled over all tweets. The report also carries recall@k
// with the linker's k. InsufficientDataError is rethrown with the fold index.
EvalReport CrossValidate(const Linker &linker, const std::vector<Tweet> &tweets,
                         const CrossValidationOptions &options);

struct AblationReport {
  EvalReport with_context;
  EvalReport without_context;
};

// Builds the EMN twice, with and without contextual knowledge, and runs
// recall@k and cross-validation on both.
AblationReport AblateContext(const Corpora &corpora,
                             const BuildOptions &build,
                             const std::vector<Tweet> &gold, LinkOptions link,
                             const CrossValidationOptions &cv);

// Output of an external explicit entity linker: tweet id -> entity id.
// Tweets without an entry are unannotated.
struct ExplicitLinkerStub {
  std::map<std::string, std::string> annotations;

  std::optional<std::string> Lookup(const std::string &tweet_id) const;
  static ExplicitLinkerStub Read(std::istream &in);
  static ExplicitLinkerStub LoadFromFile(const std::string &path);
  void Write(std::ostream &out) const;
};

struct PrfScores {
  size_t correct = 0;
  size_t annotated = 0;
  size_t with_entity = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// P = correct / annotated, R = correct / tweets with an entity,
// F1 = 2PR / (P + R); each is 0 when its denominator is 0.
PrfScores ComputePrf(size_t correct, size_t annotated, size_t with_entity);

struct CombinedPrediction {
  std::string tweet_id;
  std::string gold;
  std::string el;
  std::string el_iel;

  bool operator==(const CombinedPrediction &) const = default;
};

struct CombinedReport {
  PrfScores el;
  PrfScores el_iel;
  std::vector<CombinedPrediction> predictions;
};

// Scores the stub alone, then the stub with every tweet it leaves
// unannotated passed to the implicit linker (rank-1 output). A tweet has an
// entity when it carries a gold entity and is not labeled nil. Throws
// EmptySetError for no tweets.
CombinedReport CombinedF1(const ExplicitLinkerStub &stub,
                          const std::vector<Tweet> &mixed,
                          const Linker &linker, const TrainedRanker &ranker);

struct MixOptions {
  double test_fraction = 0.4;
  // Explicit tweets added per implicit test tweet (4:1 -> 4, 5:2 -> 2.5).
  double explicit_per_implicit = 4.0;
  // NIL tweets added, as a fraction of the implicit + explicit test tweets.
  double nil_fraction = 0.25;
  uint64_t seed = 7;
};

struct MixedDataset {
  std::vector<Tweet> train_implicit;
  std::vector<Tweet> test;
};

// Samples a mixed evaluation set from labeled tweets. Counts round down and
// are capped by what is available.
MixedDataset MixDataset(const std::vector<Tweet> &labeled,
                        const MixOptions &options);

// Audit dumps.
void WritePredictions(std::ostream &out,
                      const std::vector<Prediction> &predictions);
void WriteCombinedPredictions(std::ostream &out,
                              const std::vector<CombinedPrediction> &predictions);

// Machine-readable metric lines ("metric\tvalue") and a human-readable table.
void WriteReportTsv(std::ostream &out, const std::string &name,
                    const EvalReport &report);
void WriteCombinedTsv(std::ostream &out, const CombinedReport &report);
void PrintReportTable(std::ostream &out, const std::string &name,
                      const EvalReport &report);
void PrintCombinedTable(std::ostream &out, const CombinedReport &report);

// Deterministic Fisher-Yates shuffle driven by a 64-bit Mersenne Twister.
template <typename T>
void SeededShuffle(std::vector<T> *items, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (size_t i = items->size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng() % i);
    std::swap((*items)[i - 1], (*items)[j]);
  }
}

}  // namespace emn

#endif  // EMN_EVAL_H_
