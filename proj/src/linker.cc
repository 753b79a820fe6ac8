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

#include "emn/linker.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "emn/errors.h"
#include "unicode_util.h"

namespace emn {

namespace {

// Clue node indices for the tweet clues present in the graph, ascending, with
// the tweet-side occurrence count.
std::vector<std::pair<uint32_t, int>> MatchClues(const EmnGraph &graph,
                                                 const ClueSet &clues) {
  std::vector<std::pair<uint32_t, int>> matched;
  auto add = [&](const std::map<std::string, int> &counts) {
    for (const auto &[name, count] : counts) {
      if (auto clue = graph.FindClue(name)) matched.emplace_back(*clue, count);
    }
  };
  add(clues.phrases);
  add(clues.unigrams);
  std::sort(matched.begin(), matched.end());
  return matched;
}

}  // namespace

std::vector<CandidateScore> SelectCandidates(const EmnGraph &graph,
                                             const ClueSet &clues, int k) {
  if (k < 1) throw ConfigError("k must be >= 1");

  std::map<uint32_t, CandidateScore> by_entity;
  for (const auto &[clue_index, count] : MatchClues(graph, clues)) {
    const ClueNode &clue = graph.clues()[clue_index];
    for (const Posting &p : graph.ClueEdges(clue_index)) {
      CandidateScore &c = by_entity[p.node];
      c.evidence += clue.specificity * static_cast<double>(p.frequency);
      c.matched_clues.push_back({clue.name, clue.specificity, p.frequency});
    }
  }
  if (by_entity.empty()) throw NoCandidateError();

  std::vector<CandidateScore> all;
  all.reserve(by_entity.size());
  for (auto &[entity, c] : by_entity) {
    const EntityNode &node = graph.entities()[entity];
    c.entity_id = node.entity_id;
    c.salience = node.salience;
    all.push_back(std::move(c));
  }
  std::vector<double> scores;
  scores.reserve(all.size());
  for (const CandidateScore &c : all) scores.push_back(c.evidence);
  auto order = OrderByScore(scores, [&](size_t a, size_t b) {
    if (all[a].salience != all[b].salience) {
      return all[a].salience > all[b].salience;
    }
    return all[a].entity_id < all[b].entity_id;
  });

  std::vector<CandidateScore> top;
  size_t n = std::min(order.size(), static_cast<size_t>(k));
  top.reserve(n);
  for (size_t i = 0; i < n; ++i) top.push_back(std::move(all[order[i]]));
  return top;
}

std::map<std::string, FeatureVector> Featurize(
    const EmnGraph &graph, const std::vector<CandidateScore> &candidates,
    const ClueSet &clues, TweetWeighting weighting) {
  std::map<uint32_t, double> tweet_vector;
  double tweet_norm2 = 0.0;
  for (const auto &[clue, count] : MatchClues(graph, clues)) {
    double w = weighting == TweetWeighting::kBinary ? 1.0 : count;
    tweet_vector[clue] = w;
    tweet_norm2 += w * w;
  }

  double total_salience = 0.0;
  for (const CandidateScore &c : candidates) {
    total_salience += static_cast<double>(c.salience);
  }

  std::map<std::string, FeatureVector> features;
  for (const CandidateScore &c : candidates) {
    auto entity = graph.FindEntity(c.entity_id);
    if (!entity) throw UnknownEntityError(c.entity_id);
    double dot = 0.0;
    double entity_norm2 = 0.0;
    for (const Posting &p : graph.EntityEdges(*entity)) {
      double v = graph.clues()[p.node].specificity *
                 static_cast<double>(p.frequency);
      entity_norm2 += v * v;
      auto t = tweet_vector.find(p.node);
      if (t != tweet_vector.end()) dot += v * t->second;
    }
    FeatureVector f;
    if (entity_norm2 > 0.0 && tweet_norm2 > 0.0) {
      f.cosine = std::clamp(
          dot / (std::sqrt(entity_norm2) * std::sqrt(tweet_norm2)), 0.0, 1.0);
    }
    f.rel_salience = total_salience > 0.0
                         ? static_cast<double>(c.salience) / total_salience
                         : 1.0 / static_cast<double>(candidates.size());
    features[c.entity_id] = f;
  }
  return features;
}

std::vector<RankedEntity> Rank(
    const TrainedRanker &ranker,
    const std::map<std::string, FeatureVector> &features) {
  std::vector<const std::string *> ids;
  std::vector<const FeatureVector *> vecs;
  std::vector<double> scores;
  for (const auto &[id, f] : features) {
    ids.push_back(&id);
    vecs.push_back(&f);
    scores.push_back(ranker.Score(f.ToVector()));
  }
  auto order = OrderByScore(scores, [&](size_t a, size_t b) {
    if (vecs[a]->rel_salience != vecs[b]->rel_salience) {
      return vecs[a]->rel_salience > vecs[b]->rel_salience;
    }
    return *ids[a] < *ids[b];
  });
  std::vector<RankedEntity> ranked;
  ranked.reserve(order.size());
  for (size_t i : order) ranked.push_back({*ids[i], scores[i]});
  return ranked;
}

Linker::Linker(const EmnGraph &graph, const PhraseDictionary &dict,
               const StopwordSet &stopwords, LinkOptions options)
    : graph_(graph), dict_(dict), stopwords_(stopwords), options_(options) {
  if (options_.k < 1) throw ConfigError("k must be >= 1");
}

ClueSet Linker::Clues(std::string_view text) const {
  return TextClues(text, dict_, stopwords_, ClueMode::kTweet);
}

PreparedQuery Linker::Prepare(std::string_view text) const {
  PreparedQuery q;
  q.clues = Clues(text);
  q.candidates = SelectCandidates(graph_, q.clues, options_.k);
  q.features = Featurize(graph_, q.candidates, q.clues, options_.weighting);
  return q;
}

std::vector<RankedEntity> Linker::Link(const TrainedRanker &ranker,
                                       const LinkRequest &request) const {
  if (!request.entity_type.empty() && !graph_.entity_type().empty() &&
      unicode::ToLower(request.entity_type) !=
          unicode::ToLower(graph_.entity_type())) {
    throw ConfigError("EMN was built for type '" + graph_.entity_type() +
                      "', not '" + request.entity_type + "'");
  }
  if (request.text.empty()) throw ConfigError("empty tweet text");
  return Rank(ranker, Prepare(request.text).features);
}

bool ToRankingQuery(const std::string &id, const PreparedQuery &prepared,
                    const std::string &gold_entity, RankingQuery *query) {
  if (prepared.features.count(gold_entity) == 0) return false;
  query->id = id;
  query->candidates.clear();
  query->features.clear();
  for (const auto &[entity, f] : prepared.features) {
    if (entity == gold_entity) query->gold = query->candidates.size();
    query->candidates.push_back(entity);
    query->features.push_back(f.ToVector());
  }
  return true;
}

TrainedRanker TrainFromTweets(const Linker &linker,
                              const std::vector<Tweet> &tweets,
                              const TrainOptions &options,
                              TrainingSummary *summary) {
  std::vector<RankingQuery> queries;
  std::vector<std::string> skipped;
  for (const Tweet &tweet : tweets) {
    if (!tweet.gold_entity) {
      skipped.push_back(tweet.id);
      continue;
    }
    RankingQuery query;
    try {
      if (!ToRankingQuery(tweet.id, linker.Prepare(tweet.text),
                          *tweet.gold_entity, &query)) {
        skipped.push_back(tweet.id);
        continue;
      }
    } catch (const NoCandidateError &) {
      skipped.push_back(tweet.id);
      continue;
    }
    queries.push_back(std::move(query));
  }
  TrainStats stats;
  TrainedRanker ranker = TrainPairwise(queries, options, &stats);
  stats.skipped = skipped.size();
  if (summary != nullptr) {
    summary->stats = std::move(stats);
    summary->skipped_ids = std::move(skipped);
  }
  return ranker;
}

}  // namespace emn
