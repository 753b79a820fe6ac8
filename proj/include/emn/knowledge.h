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

// Knowledge acquisition for entity models: factual knowledge from knowledge
// base triples, contextual knowledge from tweets that explicitly mention an
// entity, and temporal salience from page views.

#ifndef EMN_KNOWLEDGE_H_
#define EMN_KNOWLEDGE_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "emn/corpus.h"

namespace emn {

inline constexpr int kDefaultTopRelations = 15;
inline constexpr int kDefaultContextCap = 1000;
inline constexpr int kDefaultSalienceWindowDays = 30;

// Joint probability of a relation with an entity type: the fraction of the
// relation's triples that touch (as subject or object) an instance of the
// type. The exact ratio is kept alongside the double.
struct RelationScore {
  std::string predicate;
  int64_t matching = 0;
  int64_t total = 0;
  double score = 0.0;

  bool operator==(const RelationScore &) const = default;
};

// Scores every predicate in `triples`, sorted by score descending with ties
// broken by predicate id. Throws EmptyCorpusError if `triples` is empty and
// ConfigError if `type_members` is empty.
std::vector<RelationScore> RankRelationships(
    const std::vector<Triple> &triples, const std::set<std::string> &type_members);

// First `m` predicates of a ranking.
std::vector<std::string> TopRelations(const std::vector<RelationScore> &ranked,
                                      int m);

struct FactualKnowledge {
  std::vector<std::string> texts;
};

// Labels of entities linked to `entity_id` through a top relation (in either
// direction), literal objects of such triples, and finally the entity's
// comment. Linked entities without a record contribute their id with '_'
// replaced by ' '. Throws UnknownEntityError if `entity_id` has no record.
FactualKnowledge ExtractFactual(
    const std::string &entity_id,
    const std::map<std::string, EntityRecord> &records,
    const std::vector<Triple> &triples,
    const std::vector<std::string> &top_relations);

struct ContextualKnowledge {
  std::vector<Tweet> tweets;
};

// Orders a tweet pool most recent first. Tweets without a timestamp go last;
// equal timestamps keep input order.
std::vector<Tweet> SortByRecency(std::vector<Tweet> pool);

// A tweet pool ordered most recent first, with the cleaned text of every
// tweet computed once.
struct TweetPool {
  std::vector<Tweet> tweets;
  std::vector<std::string> cleaned;

  static TweetPool Prepare(std::vector<Tweet> tweets);
};

// Tweets of the pool whose cleaned text contains the entity's cleaned label
// and at least one cleaned type keyword (any tweet, when `type_keywords` is
// empty), in pool order, at most `cap` of them. Throws ConfigError if
// cap < 1.
ContextualKnowledge CollectContextual(
    const EntityRecord &entity, const TweetPool &pool,
    const std::vector<std::string> &type_keywords, int cap = kDefaultContextCap);

// Same, for a pool already sorted most recent first.
ContextualKnowledge CollectContextual(
    const EntityRecord &entity, const std::vector<Tweet> &pool,
    const std::vector<std::string> &type_keywords, int cap = kDefaultContextCap);

// Sum of the entity's page views over the `window_days` days ending at (and
// including) `as_of`.
int64_t TemporalSalience(const std::string &entity_id,
                         const std::vector<PageViewRecord> &views, Date as_of,
                         int window_days = kDefaultSalienceWindowDays);

// Entities whose label occurs in at least one tweet of the pool, matched on
// whole cleaned tokens.
std::set<std::string> SpotEntities(const std::vector<Tweet> &pool,
                                   const std::vector<EntityRecord> &labels);

}  // namespace emn

#endif  // EMN_KNOWLEDGE_H_
