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

// Implicit entity linking over an EMN: candidate selection by clue evidence,
// then disambiguation with a trained pairwise ranker.

#ifndef EMN_LINKER_H_
#define EMN_LINKER_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emn/corpus.h"
#include "emn/graph.h"
#include "emn/ranker.h"
#include "emn/textprep.h"

namespace emn {

inline constexpr int kDefaultCandidates = 25;

struct LinkRequest {
  // Entity type the tweet is linked against, e.g. "Movie". Empty matches any
  // graph.
  std::string entity_type;
  std::string text;
};

struct MatchedClue {
  std::string name;
  double specificity = 0.0;
  int64_t frequency = 0;
};

struct CandidateScore {
  std::string entity_id;
  // Sum of specificity * edge frequency over the matched clues.
  double evidence = 0.0;
  int64_t salience = 0;
  std::vector<MatchedClue> matched_clues;
};

struct FeatureVector {
  // Cosine similarity between the entity vector and the tweet vector.
  double cosine = 0.0;
  // Salience divided by the summed salience of the request's candidates.
  double rel_salience = 0.0;

  std::vector<double> ToVector() const { return {cosine, rel_salience}; }
};

inline constexpr size_t kFeatureDimension = 2;

enum class TweetWeighting {
  kBinary,         // 1 per distinct tweet clue
  kTermFrequency,  // occurrences of the clue in the tweet
};

// Matches tweet clues to clue nodes by name. Every entity adjacent to a
// matched clue is a candidate; the top `k` by evidence are returned, ties
// broken by higher salience, then entity id. Throws NoCandidateError when no
// clue matches and ConfigError when k < 1.
std::vector<CandidateScore> SelectCandidates(const EmnGraph &graph,
                                             const ClueSet &clues, int k);

// Features for every candidate. When all candidates have zero salience the
// relative salience is uniform.
std::map<std::string, FeatureVector> Featurize(
    const EmnGraph &graph, const std::vector<CandidateScore> &candidates,
    const ClueSet &clues, TweetWeighting weighting = TweetWeighting::kBinary);

struct RankedEntity {
  std::string entity_id;
  double score = 0.0;
};

// Orders candidates by ranker score, ties broken by higher relative salience,
// then entity id.
std::vector<RankedEntity> Rank(
    const TrainedRanker &ranker,
    const std::map<std::string, FeatureVector> &features);

struct LinkOptions {
  int k = kDefaultCandidates;
  TweetWeighting weighting = TweetWeighting::kBinary;
};

// Everything computed for one tweet up to (not including) ranking.
struct PreparedQuery {
  ClueSet clues;
  std::vector<CandidateScore> candidates;
  std::map<std::string, FeatureVector> features;
};

// Bundles a graph with the text resources needed to turn raw tweets into
// clues. Holds references; all referenced objects must outlive the linker.
class Linker {
 public:
  Linker(const EmnGraph &graph, const PhraseDictionary &dict,
         const StopwordSet &stopwords, LinkOptions options = {});

  const EmnGraph &graph() const { return graph_; }
  const LinkOptions &options() const { return options_; }

  ClueSet Clues(std::string_view text) const;

  // Throws NoCandidateError.
  PreparedQuery Prepare(std::string_view text) const;

  // Full ranked candidate list. Throws NoCandidateError, and ConfigError if
  // the request's entity type differs from the graph's.
  std::vector<RankedEntity> Link(const TrainedRanker &ranker,
                                 const LinkRequest &request) const;

 private:
  const EmnGraph &graph_;
  const PhraseDictionary &dict_;
  const StopwordSet &stopwords_;
  LinkOptions options_;
};

struct TrainingSummary {
  TrainStats stats;
  std::vector<std::string> skipped_ids;
};

// Turns gold tweets into ranking queries (tweets without a gold entity,
// without candidates, or whose gold entity is not a candidate are skipped and
// reported) and trains a ranker on them.
TrainedRanker TrainFromTweets(const Linker &linker,
                              const std::vector<Tweet> &tweets,
                              const TrainOptions &options,
                              TrainingSummary *summary = nullptr);

// Converts one prepared query into a ranking query; returns false if the gold
// entity is not among the candidates.
bool ToRankingQuery(const std::string &id, const PreparedQuery &prepared,
                    const std::string &gold_entity, RankingQuery *query);

}  // namespace emn

#endif  // EMN_LINKER_H_
