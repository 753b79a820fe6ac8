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

#include <algorithm>
#include <random>

#include <doctest.h>

#include "emn/errors.h"
#include "emn/knowledge.h"

namespace emn {
namespace {

Triple T(std::string s, std::string p, std::string o, bool literal = false) {
  return {std::move(s), std::move(p), std::move(o), literal};
}

Tweet At(std::string id, std::string text, int day) {
  Tweet t;
  t.id = std::move(id);
  t.text = std::move(text);
  t.timestamp = std::chrono::sys_days{std::chrono::year{2014} / 7 / day};
  return t;
}

const RelationScore &Find(const std::vector<RelationScore> &ranked,
                          const std::string &predicate) {
  auto it = std::find_if(ranked.begin(), ranked.end(),
                         [&](const auto &s) { return s.predicate == predicate; });
  REQUIRE(it != ranked.end());
  return *it;
}

TEST_CASE("rank relationships") {
  std::vector<Triple> triples;
  for (int i = 0; i < 10; ++i) {
    triples.push_back(T(i < 5 ? "m" + std::to_string(i) : "p" + std::to_string(i),
                        "director", "x" + std::to_string(i)));
  }
  triples.push_back(T("y", "starring", "m1"));
  triples.push_back(T("m2", "runtime", "91 minutes", true));
  triples.push_back(T("a", "spouse", "b"));
  std::set<std::string> movies = {"m0", "m1", "m2", "m3", "m4"};

  auto ranked = RankRelationships(triples, movies);
  CHECK(Find(ranked, "director").score == 0.5);
  CHECK(Find(ranked, "director").matching == 5);
  CHECK(Find(ranked, "director").total == 10);
  CHECK(Find(ranked, "starring").score == 1.0);
  CHECK(Find(ranked, "spouse").score == 0.0);
  std::vector<std::string> order;
  for (const auto &s : ranked) order.push_back(s.predicate);
  CHECK(order ==
        std::vector<std::string>{"runtime", "starring", "director", "spouse"});
  CHECK(TopRelations(ranked, 2) == std::vector<std::string>{"runtime", "starring"});
  CHECK(TopRelations(ranked, 15).size() == 4);

  CHECK_THROWS_AS(RankRelationships({}, movies), EmptyCorpusError);
  CHECK_THROWS_AS(RankRelationships(triples, {}), ConfigError);
}

TEST_CASE("rank relationships is permutation stable") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 30; ++round) {
    std::vector<Triple> triples;
    int n = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      triples.push_back(T("e" + std::to_string(rng() % 10),
                          "r" + std::to_string(rng() % 6),
                          "e" + std::to_string(rng() % 10)));
    }
    std::set<std::string> members = {"e1", "e2", "e3"};
    auto expected = RankRelationships(triples, members);
    for (const auto &s : expected) {
      CHECK(s.score >= 0.0);
      CHECK(s.score <= 1.0);
    }
    std::shuffle(triples.begin(), triples.end(), rng);
    CHECK(RankRelationships(triples, members) == expected);
  }
}

TEST_CASE("extract factual") {
  std::map<std::string, EntityRecord> records = {
      {"Gravity_(film)",
       {"Gravity_(film)", "Gravity", "A 2013 space film.", "Movie"}},
      {"Sandra_Bullock", {"Sandra_Bullock", "Sandra Bullock", "", "Person"}},
      {"Empty", {"Empty", "Empty", "", "Movie"}},
  };
  std::vector<Triple> triples = {
      T("Gravity_(film)", "starring", "Sandra_Bullock"),
      T("Gravity_(film)", "starring", "George_Clooney"),
      T("Alfonso_Cuaron", "directed", "Gravity_(film)"),
      T("Gravity_(film)", "runtime", "91 minutes", true),
      T("Gravity_(film)", "budget", "$100 million", true),
  };
  std::vector<std::string> top = {"starring", "directed", "runtime"};

  auto gravity = ExtractFactual("Gravity_(film)", records, triples, top);
  CHECK(gravity.texts ==
        std::vector<std::string>{"Sandra Bullock", "George Clooney",
                                 "Alfonso Cuaron", "91 minutes",
                                 "A 2013 space film."});
  CHECK(ExtractFactual("Empty", records, triples, top).texts.empty());
  CHECK(ExtractFactual("Gravity_(film)", records, triples, {}).texts ==
        std::vector<std::string>{"A 2013 space film."});
  CHECK_THROWS_AS(ExtractFactual("Nope", records, triples, top),
                  UnknownEntityError);
}

TEST_CASE("extract factual counts qualifying triples") {
  std::map<std::string, EntityRecord> records = {
      {"e", {"e", "E", "comment", "T"}}};
  std::vector<Triple> triples = {T("e", "a", "x"), T("y", "b", "e"),
                                 T("e", "a", "lit", true), T("e", "c", "z"),
                                 T("q", "a", "r")};
  auto factual = ExtractFactual("e", records, triples, {"a", "b"});
  CHECK(factual.texts.size() == 4);
}

TEST_CASE("sort by recency") {
  Tweet undated;
  undated.id = "u";
  undated.text = "x";
  auto sorted = SortByRecency({At("a", "x", 1), undated, At("b", "x", 9),
                               At("c", "x", 9), At("d", "x", 5)});
  std::vector<std::string> ids;
  for (const Tweet &t : sorted) ids.push_back(t.id);
  CHECK(ids == std::vector<std::string>{"b", "c", "d", "a", "u"});
}

TEST_CASE("collect contextual") {
  EntityRecord gravity{"Gravity_(film)", "Gravity", "", "Movie"};
  std::vector<std::string> keywords = {"movie", "film"};

  CHECK(CollectContextual(gravity, std::vector<Tweet>{At("1", "nothing here", 1)},
                          keywords, 1000)
            .tweets.empty());

  std::vector<Tweet> pool = SortByRecency(
      {At("1", "Gravity movie tonight", 3), At("2", "gravity is a force", 4),
       At("3", "The GRAVITY film!!", 5), At("4", "sandra in space movie", 6),
       At("5", "#Gravity #film", 7)});
  auto ctx = CollectContextual(gravity, pool, keywords, 1000);
  std::vector<std::string> ids;
  for (const Tweet &t : ctx.tweets) ids.push_back(t.id);
  CHECK(ids == std::vector<std::string>{"5", "3", "1"});

  // Same result through the prepared pool.
  auto prepared = CollectContextual(gravity, TweetPool::Prepare(pool), keywords);
  CHECK(prepared.tweets == ctx.tweets);

  // Without keywords the label is enough.
  CHECK(CollectContextual(gravity, pool, {}, 1000).tweets.size() == 4);
  CHECK_THROWS_AS(CollectContextual(gravity, pool, keywords, 0), ConfigError);
}

TEST_CASE("collect contextual keeps the most recent tweets under the cap") {
  EntityRecord e{"Gravity_(film)", "Gravity", "", "Movie"};
  std::vector<Tweet> pool;
  for (int i = 0; i < 1200; ++i) {
    Tweet t = At("t" + std::to_string(i), "gravity movie", 1);
    *t.timestamp += std::chrono::seconds(i);
    pool.push_back(t);
  }
  std::mt19937_64 rng(1);
  std::shuffle(pool.begin(), pool.end(), rng);
  auto ctx = CollectContextual(e, TweetPool::Prepare(pool), {"movie"}, 1000);
  REQUIRE(ctx.tweets.size() == 1000);
  // Oracle: the 1000 largest timestamps, newest first.
  std::vector<Tweet> expected = pool;
  std::sort(expected.begin(), expected.end(),
            [](const Tweet &a, const Tweet &b) { return *a.timestamp > *b.timestamp; });
  expected.resize(1000);
  CHECK(ctx.tweets == expected);
}

TEST_CASE("collect contextual result is a capped subsequence") {
  std::mt19937_64 rng(4);
  const std::vector<std::string> words = {"gravity", "movie", "film", "space",
                                          "sandra"};
  EntityRecord e{"G", "Gravity", "", "Movie"};
  for (int round = 0; round < 100; ++round) {
    std::vector<Tweet> pool;
    int n = static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) {
      std::string text;
      for (int w = 0; w < 4; ++w) text += words[rng() % words.size()] + " ";
      pool.push_back(At("t" + std::to_string(i), text, 1 + rng() % 28));
    }
    pool = SortByRecency(pool);
    int cap = 1 + static_cast<int>(rng() % 10);
    auto ctx = CollectContextual(e, pool, {"movie", "film"}, cap);
    CHECK(static_cast<int>(ctx.tweets.size()) <= cap);
    // Linear-scan oracle.
    std::vector<Tweet> expected;
    for (const Tweet &t : pool) {
      if (static_cast<int>(expected.size()) == cap) break;
      bool label = t.text.find("gravity") != std::string::npos;
      bool kw = t.text.find("movie") != std::string::npos ||
                t.text.find("film") != std::string::npos;
      if (label && kw) expected.push_back(t);
    }
    CHECK(ctx.tweets == expected);
  }
}

TEST_CASE("temporal salience") {
  const Date as_of = ParseDate("2014-07-31");
  std::vector<PageViewRecord> views = {
      {"e1", ParseDate("2014-07-31"), 10},
      {"e1", ParseDate("2014-07-02"), 20},
      {"e1", ParseDate("2014-07-01"), 99},
      {"e1", ParseDate("2014-08-01"), 1000},
      {"e2", ParseDate("2014-07-31"), 7},
  };
  CHECK(TemporalSalience("none", views, as_of) == 0);
  CHECK(TemporalSalience("e1", views, as_of, 30) == 30);
  CHECK(TemporalSalience("e2", views, as_of, 1) == 7);
  CHECK(TemporalSalience("e1", views, as_of, 31) == 129);
  CHECK_THROWS_AS(TemporalSalience("e1", views, as_of, 0), ConfigError);
}

TEST_CASE("temporal salience matches a date filter and is additive") {
  std::mt19937_64 rng(12);
  const Date base = ParseDate("2014-06-01");
  for (int round = 0; round < 50; ++round) {
    std::vector<PageViewRecord> views;
    for (int d = 0; d < 90; ++d) {
      if (rng() % 3 == 0) continue;
      views.push_back({"e", base + std::chrono::days(d),
                       static_cast<int64_t>(rng() % 1000)});
      views.push_back({"other", base + std::chrono::days(d), 5});
    }
    Date as_of = base + std::chrono::days(rng() % 90);
    int window = 1 + static_cast<int>(rng() % 60);
    int64_t oracle = 0;
    for (const auto &r : views) {
      auto age = (as_of - r.date).count();
      if (r.entity_id == "e" && age >= 0 && age < window) oracle += r.views;
    }
    CHECK(TemporalSalience("e", views, as_of, window) == oracle);
    if (window > 1) {
      int split = 1 + static_cast<int>(rng() % (window - 1));
      int64_t recent = TemporalSalience("e", views, as_of, split);
      int64_t older = TemporalSalience(
          "e", views, as_of - std::chrono::days(split), window - split);
      CHECK(recent + older == oracle);
    }
  }
}

TEST_CASE("spot entities") {
  std::vector<EntityRecord> labels = {
      {"Gravity_(film)", "Gravity", "", "Movie"},
      {"It_(film)", "It", "", "Movie"},
      {"TFIOS", "The Fault in Our Stars", "", "Movie"},
  };
  CHECK(SpotEntities({}, labels).empty());
  CHECK(SpotEntities({At("1", "gravity was great", 1)}, labels) ==
        std::set<std::string>{"Gravity_(film)"});
  CHECK(SpotEntities({At("1", "I write stories", 1)}, labels).empty());
  CHECK(SpotEntities({At("1", "the fault in our stars, finally!", 1),
                      At("2", "IT was scary", 2)},
                     labels) == std::set<std::string>{"It_(film)", "TFIOS"});
  CHECK(SpotEntities({At("1", "fault in our stars", 1)}, labels).empty());
}

TEST_CASE("spotting equals a token-boundary scan") {
  std::mt19937_64 rng(21);
  const std::vector<std::string> words = {"a", "b", "ab", "ba", "c"};
  for (int round = 0; round < 200; ++round) {
    std::vector<EntityRecord> labels;
    for (int i = 0; i < 4; ++i) {
      std::string label = words[rng() % words.size()];
      if (rng() % 2) label += " " + words[rng() % words.size()];
      labels.push_back({"e" + std::to_string(i), label, "", "T"});
    }
    std::vector<Tweet> pool;
    for (int i = 0; i < 3; ++i) {
      std::string text;
      for (int w = 0; w < 4; ++w) text += words[rng() % words.size()] + " ";
      pool.push_back(At("t" + std::to_string(i), text, 1));
    }
    std::set<std::string> expected;
    for (const auto &l : labels) {
      for (const Tweet &t : pool) {
        // Pad with spaces so that a substring hit is a whole-token hit.
        std::string padded = " " + t.text + " ";
        if (padded.find(" " + l.label + " ") != std::string::npos) {
          expected.insert(l.entity_id);
        }
      }
    }
    CHECK(SpotEntities(pool, labels) == expected);
  }
}

}  // namespace
}  // namespace emn
