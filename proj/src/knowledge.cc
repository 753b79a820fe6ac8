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

#include "emn/knowledge.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "emn/errors.h"
#include "emn/textprep.h"

namespace emn {

std::vector<RelationScore> RankRelationships(
    const std::vector<Triple> &triples,
    const std::set<std::string> &type_members) {
  if (triples.empty()) throw EmptyCorpusError("no triples to rank");
  if (type_members.empty()) throw ConfigError("entity type has no instances");

  std::map<std::string, RelationScore> by_predicate;
  for (const Triple &t : triples) {
    RelationScore &s = by_predicate[t.predicate];
    ++s.total;
    bool touches = type_members.count(t.subject) > 0 ||
                   type_members.count(t.object) > 0;
    if (touches) ++s.matching;
  }

  std::vector<RelationScore> ranked;
  ranked.reserve(by_predicate.size());
  for (auto &[predicate, s] : by_predicate) {
    s.predicate = predicate;
    s.score = static_cast<double>(s.matching) / static_cast<double>(s.total);
    ranked.push_back(std::move(s));
  }
  // Compare the exact ratios so that equal fractions tie regardless of how
  // the doubles round.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RelationScore &a, const RelationScore &b) {
                     __int128 lhs = static_cast<__int128>(a.matching) * b.total;
                     __int128 rhs = static_cast<__int128>(b.matching) * a.total;
                     if (lhs != rhs) return lhs > rhs;
                     return a.predicate < b.predicate;
                   });
  return ranked;
}

std::vector<std::string> TopRelations(const std::vector<RelationScore> &ranked,
                                      int m) {
  std::vector<std::string> top;
  for (const RelationScore &s : ranked) {
    if (static_cast<int>(top.size()) >= m) break;
    top.push_back(s.predicate);
  }
  return top;
}

FactualKnowledge ExtractFactual(
    const std::string &entity_id,
    const std::map<std::string, EntityRecord> &records,
    const std::vector<Triple> &triples,
    const std::vector<std::string> &top_relations) {
  auto self = records.find(entity_id);
  if (self == records.end()) throw UnknownEntityError(entity_id);

  std::unordered_set<std::string> top(top_relations.begin(),
                                      top_relations.end());
  auto label_of = [&](const std::string &id) {
    auto it = records.find(id);
    if (it != records.end()) return it->second.label;
    std::string name = id;
    std::replace(name.begin(), name.end(), '_', ' ');
    return name;
  };

  FactualKnowledge factual;
  for (const Triple &t : triples) {
    if (top.count(t.predicate) == 0) continue;
    if (t.subject == entity_id) {
      factual.texts.push_back(t.object_is_literal ? t.object
                                                  : label_of(t.object));
    } else if (!t.object_is_literal && t.object == entity_id) {
      factual.texts.push_back(label_of(t.subject));
    }
  }
  if (!self->second.comment.empty()) {
    factual.texts.push_back(self->second.comment);
  }
  return factual;
}

std::vector<Tweet> SortByRecency(std::vector<Tweet> pool) {
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Tweet &a, const Tweet &b) {
                     if (a.timestamp.has_value() != b.timestamp.has_value()) {
                       return a.timestamp.has_value();
                     }
                     return a.timestamp && *a.timestamp > *b.timestamp;
                   });
  return pool;
}

TweetPool TweetPool::Prepare(std::vector<Tweet> tweets) {
  TweetPool pool;
  pool.tweets = SortByRecency(std::move(tweets));
  pool.cleaned.reserve(pool.tweets.size());
  for (const Tweet &t : pool.tweets) pool.cleaned.push_back(Clean(t.text).Joined());
  return pool;
}

namespace {

ContextualKnowledge Collect(const EntityRecord &entity,
                            const std::vector<Tweet> &tweets,
                            const std::vector<std::string> *cleaned,
                            const std::vector<std::string> &type_keywords,
                            int cap) {
  if (cap < 1) throw ConfigError("context cap must be >= 1");
  ContextualKnowledge context;
  std::string label = Clean(entity.label).Joined();
  if (label.empty()) return context;
  std::vector<std::string> keywords;
  for (const std::string &k : type_keywords) {
    std::string cleaned_keyword = Clean(k).Joined();
    if (!cleaned_keyword.empty()) keywords.push_back(std::move(cleaned_keyword));
  }

  for (size_t i = 0; i < tweets.size(); ++i) {
    if (static_cast<int>(context.tweets.size()) >= cap) break;
    std::string owned;
    const std::string *text;
    if (cleaned != nullptr) {
      text = &(*cleaned)[i];
    } else {
      owned = Clean(tweets[i].text).Joined();
      text = &owned;
    }
    if (text->find(label) == std::string::npos) continue;
    bool keyword_hit = keywords.empty();
    for (const std::string &k : keywords) {
      if (text->find(k) != std::string::npos) {
        keyword_hit = true;
        break;
      }
    }
    if (keyword_hit) context.tweets.push_back(tweets[i]);
  }
  return context;
}

}  // namespace

ContextualKnowledge CollectContextual(
    const EntityRecord &entity, const TweetPool &pool,
    const std::vector<std::string> &type_keywords, int cap) {
  return Collect(entity, pool.tweets, &pool.cleaned, type_keywords, cap);
}

ContextualKnowledge CollectContextual(
    const EntityRecord &entity, const std::vector<Tweet> &pool,
    const std::vector<std::string> &type_keywords, int cap) {
  return Collect(entity, pool, nullptr, type_keywords, cap);
}

int64_t TemporalSalience(const std::string &entity_id,
                         const std::vector<PageViewRecord> &views, Date as_of,
                         int window_days) {
  if (window_days < 1) throw ConfigError("salience window must be >= 1 day");
  const Date first = as_of - std::chrono::days(window_days - 1);
  int64_t total = 0;
  for (const PageViewRecord &r : views) {
    if (r.entity_id == entity_id && r.date >= first && r.date <= as_of) {
      total += r.views;
    }
  }
  return total;
}

std::set<std::string> SpotEntities(const std::vector<Tweet> &pool,
                                   const std::vector<EntityRecord> &labels) {
  std::unordered_map<std::string, std::vector<std::string>> by_label;
  size_t longest = 0;
  for (const EntityRecord &r : labels) {
    CleanText label = Clean(r.label);
    if (label.tokens.empty()) continue;
    longest = std::max(longest, label.tokens.size());
    by_label[label.Joined()].push_back(r.entity_id);
  }

  std::set<std::string> spotted;
  for (const Tweet &tweet : pool) {
    const auto tokens = Clean(tweet.text).tokens;
    for (size_t i = 0; i < tokens.size(); ++i) {
      std::string span;
      for (size_t len = 1; len <= longest && i + len <= tokens.size(); ++len) {
        if (len > 1) span.push_back(' ');
        span += tokens[i + len - 1];
        auto it = by_label.find(span);
        if (it != by_label.end()) spotted.insert(it->second.begin(), it->second.end());
      }
    }
  }
  return spotted;
}

}  // namespace emn
