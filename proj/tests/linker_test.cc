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

#include <cmath>
#include <random>

#include <doctest.h>

#include "emn/errors.h"
#include "emn/linker.h"
#include "testing.h"

namespace emn {
namespace {

const Date kBuilt = std::chrono::sys_days{std::chrono::year{2014} / 7 / 31};

EmnGraph Graph(std::vector<EntityNode> entities,
               const std::vector<EdgeSpec> &edges) {
  return EmnGraph::FromParts(std::move(entities), edges, {}, kBuilt, "Movie");
}

ClueSet Unigrams(std::initializer_list<const char *> words) {
  ClueSet c;
  for (const char *w : words) ++c.unigrams[w];
  return c;
}

std::vector<std::string> Ids(const std::vector<CandidateScore> &candidates) {
  std::vector<std::string> ids;
  for (const auto &c : candidates) ids.push_back(c.entity_id);
  return ids;
}

TEST_CASE("candidate selection examples") {
  // "shared" touches A and B out of four entities: specificity ln 2.
  EmnGraph graph = Graph({{"A", "A", 0}, {"B", "B", 0}, {"C", "C", 0},
                          {"D", "D", 0}},
                         {{"shared", "A", 3},
                          {"shared", "B", 1},
                          {"c", "C", 1},
                          {"d", "D", 1}});
  EmnGraph scaled = graph.WithScaledSpecificity(2.0 / std::log(2.0));
  auto candidates = SelectCandidates(scaled, Unigrams({"shared"}), 25);
  REQUIRE(candidates.size() == 2);
  CHECK(candidates[0].entity_id == "A");
  CHECK(candidates[0].evidence == doctest::Approx(6.0));
  CHECK(candidates[1].entity_id == "B");
  CHECK(candidates[1].evidence == doctest::Approx(2.0));
  REQUIRE(candidates[0].matched_clues.size() == 1);
  CHECK(candidates[0].matched_clues[0].frequency == 3);

  CHECK_THROWS_AS(SelectCandidates(graph, Unigrams({"nothing"}), 25),
                  NoCandidateError);
  CHECK_THROWS_AS(SelectCandidates(graph, ClueSet{}, 25), NoCandidateError);
  CHECK_THROWS_AS(SelectCandidates(graph, Unigrams({"c"}), 0), ConfigError);
}

TEST_CASE("k caps the candidate list at the highest scores") {
  std::vector<EntityNode> entities;
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < 30; ++i) {
    std::string id = "e" + testing::Word(static_cast<size_t>(i));
    entities.push_back({id, id, 0});
    edges.push_back({"common", id, i + 1});
    edges.push_back({"own" + id, id, 1});
  }
  entities.push_back({"zz", "zz", 0});
  edges.push_back({"other", "zz", 1});
  EmnGraph graph = Graph(entities, edges);
  auto candidates = SelectCandidates(graph, Unigrams({"common"}), 25);
  REQUIRE(candidates.size() == 25);
  for (int i = 0; i < 25; ++i) {
    CHECK(candidates[i].entity_id ==
          "e" + testing::Word(static_cast<size_t>(29 - i)));
  }
}

TEST_CASE("ties go to salience, then id") {
  EmnGraph graph = Graph({{"a", "a", 10}, {"b", "b", 50}, {"c", "c", 50},
                          {"d", "d", 0}},
                         {{"x", "a", 1},
                          {"x", "b", 1},
                          {"x", "c", 1},
                          {"y", "d", 1}});
  auto candidates = SelectCandidates(graph, Unigrams({"x"}), 25);
  CHECK(Ids(candidates) == std::vector<std::string>{"b", "c", "a"});
}

TEST_CASE("candidate selection equals the brute-force oracle") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 200; ++round) {
    auto g = testing::RandomGraph(rng, 40, 120);
    ClueSet clues = testing::RandomClues(rng, g.clue_names);
    int k = 1 + static_cast<int>(rng() % 30);
    auto expected = testing::BruteForceCandidates(g.graph, clues, k);
    if (expected.empty()) {
      CHECK_THROWS_AS(SelectCandidates(g.graph, clues, k), NoCandidateError);
      continue;
    }
    auto got = SelectCandidates(g.graph, clues, k);
    REQUIRE(got.size() == expected.size());
    for (size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].entity_id == expected[i].entity_id);
      CHECK(got[i].evidence ==
            doctest::Approx(static_cast<double>(expected[i].evidence))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("featurize") {
  EmnGraph graph = Graph({{"A", "A", 30}, {"B", "B", 30}, {"C", "C", 0}},
                         {{"a1", "A", 2},
                          {"a2", "A", 1},
                          {"ab", "A", 1},
                          {"ab", "B", 1},
                          {"b1", "B", 4},
                          {"c1", "C", 1}});
  SUBCASE("single candidate") {
    ClueSet clues = Unigrams({"c1"});
    auto f = Featurize(graph, SelectCandidates(graph, clues, 25), clues);
    REQUIRE(f.size() == 1);
    CHECK(f.at("C").rel_salience == 1.0);
    CHECK(f.at("C").cosine == doctest::Approx(1.0));
  }
  SUBCASE("equal salience splits evenly") {
    ClueSet clues = Unigrams({"ab"});
    auto f = Featurize(graph, SelectCandidates(graph, clues, 25), clues);
    CHECK(f.at("A").rel_salience == 0.5);
    CHECK(f.at("B").rel_salience == 0.5);
  }
  SUBCASE("cosine against a dense oracle") {
    ClueSet clues = Unigrams({"a1", "ab", "nowhere"});
    ++clues.unigrams["a1"];
    auto f = Featurize(graph, SelectCandidates(graph, clues, 25), clues);
    // Dense over (a1, a2, ab, b1, c1); the tweet vector is binary over the
    // clues known to the graph.
    const double ln3 = std::log(3.0), ln32 = std::log(1.5);
    std::vector<double> a = {2 * ln3, ln3, ln32, 0, 0};
    std::vector<double> b = {0, 0, ln32, 4 * ln3, 0};
    std::vector<double> t = {1, 0, 1, 0, 0};
    auto cosine = [](const std::vector<double> &x, const std::vector<double> &y) {
      double dot = 0, nx = 0, ny = 0;
      for (size_t i = 0; i < x.size(); ++i) {
        dot += x[i] * y[i];
        nx += x[i] * x[i];
        ny += y[i] * y[i];
      }
      return dot / std::sqrt(nx * ny);
    };
    CHECK(f.at("A").cosine == doctest::Approx(cosine(a, t)).epsilon(1e-12));
    CHECK(f.at("B").cosine == doctest::Approx(cosine(b, t)).epsilon(1e-12));

    auto tf = Featurize(graph, SelectCandidates(graph, clues, 25), clues,
                        TweetWeighting::kTermFrequency);
    std::vector<double> t2 = {2, 0, 1, 0, 0};
    CHECK(tf.at("A").cosine == doctest::Approx(cosine(a, t2)).epsilon(1e-12));
  }
  SUBCASE("all-zero salience falls back to uniform") {
    EmnGraph zero = Graph({{"A", "A", 0}, {"B", "B", 0}, {"C", "C", 0}},
                          {{"x", "A", 1}, {"x", "B", 1}, {"x", "C", 1}});
    ClueSet clues = Unigrams({"x"});
    auto f = Featurize(zero, SelectCandidates(zero, clues, 25), clues);
    for (const auto &[id, v] : f) CHECK(v.rel_salience == doctest::Approx(1.0 / 3));
  }
}

TEST_CASE("relative salience sums to one") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 200; ++round) {
    auto g = testing::RandomGraph(rng, 30, 60);
    ClueSet clues = testing::RandomClues(rng, g.clue_names);
    std::vector<CandidateScore> candidates;
    try {
      candidates = SelectCandidates(g.graph, clues, 25);
    } catch (const NoCandidateError &) {
      continue;
    }
    double sum = 0.0;
    for (const auto &[id, f] : Featurize(g.graph, candidates, clues)) {
      CHECK(f.rel_salience >= 0.0);
      CHECK(f.rel_salience <= 1.0);
      CHECK(f.cosine >= 0.0);
      CHECK(f.cosine <= 1.0);
      sum += f.rel_salience;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("rank") {
  TrainedRanker cosine_only({1.0, 0.0}, "");
  std::map<std::string, FeatureVector> f = {{"low", {0.2, 0.9}},
                                            {"high", {0.9, 0.1}}};
  auto ranked = Rank(cosine_only, f);
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].entity_id == "high");
  CHECK(ranked[0].score == doctest::Approx(0.9));

  TrainedRanker anything({-5.0, 3.0}, "");
  CHECK(Rank(anything, {{"only", {0.4, 1.0}}})[0].entity_id == "only");

  // Equal scores: higher relative salience, then id.
  TrainedRanker flat({0.0, 0.0}, "");
  auto tied = Rank(flat, {{"b", {0.1, 0.25}}, {"a", {0.3, 0.25}},
                          {"c", {0.0, 0.5}}});
  CHECK(tied[0].entity_id == "c");
  CHECK(tied[1].entity_id == "a");
  CHECK(tied[2].entity_id == "b");
}

TEST_CASE("rank equals a naive sort") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int round = 0; round < 300; ++round) {
    TrainedRanker ranker({u(rng), u(rng)}, "");
    std::map<std::string, FeatureVector> f;
    int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) {
      f["e" + testing::Word(rng() % 50)] = {std::abs(u(rng)),
                                            std::abs(u(rng))};
    }
    std::vector<std::pair<std::string, FeatureVector>> naive(f.begin(), f.end());
    auto score = [&](const FeatureVector &v) {
      return ranker.weights()[0] * v.cosine + ranker.weights()[1] * v.rel_salience;
    };
    std::sort(naive.begin(), naive.end(), [&](const auto &a, const auto &b) {
      double sa = score(a.second), sb = score(b.second);
      if (sa != sb) return sa > sb;
      if (a.second.rel_salience != b.second.rel_salience) {
        return a.second.rel_salience > b.second.rel_salience;
      }
      return a.first < b.first;
    });
    auto ranked = Rank(ranker, f);
    REQUIRE(ranked.size() == naive.size());
    for (size_t i = 0; i < ranked.size(); ++i) {
      CHECK(ranked[i].entity_id == naive[i].first);
    }
  }
}

TEST_CASE("ranked orders ignore the logarithm base") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PhraseDictionary dict;
  StopwordSet stopwords;
  for (int round = 0; round < 50; ++round) {
    auto g = testing::RandomGraph(rng, 30, 80);
    ClueSet clues = testing::RandomClues(rng, g.clue_names);
    TrainedRanker ranker({u(rng), u(rng)}, "");
    std::vector<std::string> reference;
    bool first = true;
    for (double factor : {1.0, 1.0 / std::log(2.0), 1.0 / std::log(10.0), 7.5,
                          1e-3}) {
      EmnGraph scaled = g.graph.WithScaledSpecificity(factor);
      std::vector<std::string> order;
      try {
        auto candidates = SelectCandidates(scaled, clues, 10);
        for (const auto &r : Rank(ranker, Featurize(scaled, candidates, clues))) {
          order.push_back(r.entity_id);
        }
      } catch (const NoCandidateError &) {
      }
      if (first) reference = order;
      first = false;
      CHECK(order == reference);
    }
  }
}

TEST_CASE("link") {
  EmnGraph graph = Graph({{"Gravity_(film)", "Gravity", 10},
                          {"Noah_(film)", "Noah", 5}},
                         {{"astronaut", "Gravity_(film)", 2},
                          {"sandra bullock", "Gravity_(film)", 1},
                          {"ark", "Noah_(film)", 3}});
  PhraseDictionary dict;
  dict.Add("Sandra Bullock");
  StopwordSet stopwords = {"the", "to"};
  Linker linker(graph, dict, stopwords);
  TrainedRanker ranker({1.0, 0.1}, "");

  auto ranked = linker.Link(ranker, {"Movie", "Going to see Sandra Bullock!"});
  REQUIRE(ranked.size() == 1);
  CHECK(ranked[0].entity_id == "Gravity_(film)");
  CHECK(linker.Link(ranker, {"", "the ark"})[0].entity_id == "Noah_(film)");
  CHECK(linker.Link(ranker, {"movie", "the ark"}).size() == 1);

  CHECK_THROWS_AS(linker.Link(ranker, {"Book", "the ark"}), ConfigError);
  CHECK_THROWS_AS(linker.Link(ranker, {"Movie", ""}), ConfigError);
  CHECK_THROWS_AS(linker.Link(ranker, {"Movie", "the to the"}),
                  NoCandidateError);
  CHECK_THROWS_AS(Linker(graph, dict, stopwords, {0, TweetWeighting::kBinary}),
                  ConfigError);
}

TEST_CASE("separable fixture links every gold tweet") {
  testing::Fixture fixture = testing::SeparableFixture();
  EmnGraph graph = BuildEmn(fixture.corpora, fixture.build);
  Linker linker(graph, fixture.corpora.dict, fixture.corpora.stopwords);
  TrainingSummary summary;
  TrainedRanker ranker = TrainFromTweets(linker, fixture.gold, {}, &summary);
  CHECK(summary.stats.queries == fixture.gold.size());
  CHECK(summary.stats.swapped_pairs == 0);
  CHECK(summary.skipped_ids.empty());
  for (const Tweet &t : fixture.gold) {
    CHECK(linker.Link(ranker, {"Movie", t.text})[0].entity_id ==
          *t.gold_entity);
  }
}

TEST_CASE("training skips tweets it cannot use") {
  testing::Fixture fixture = testing::SeparableFixture();
  EmnGraph graph = BuildEmn(fixture.corpora, fixture.build);
  Linker linker(graph, fixture.corpora.dict, fixture.corpora.stopwords);
  std::vector<Tweet> tweets = fixture.gold;
  Tweet no_gold = tweets[0];
  no_gold.id = "no-gold";
  no_gold.gold_entity.reset();
  Tweet no_clue = tweets[0];
  no_clue.id = "no-clue";
  no_clue.text = "zzz yyy";
  Tweet elsewhere = tweets[0];
  elsewhere.id = "elsewhere";
  elsewhere.gold_entity = "Unknown_(film)";
  tweets.insert(tweets.end(), {no_gold, no_clue, elsewhere});

  TrainingSummary summary;
  TrainFromTweets(linker, tweets, {}, &summary);
  CHECK(summary.stats.skipped == 3);
  CHECK(summary.skipped_ids ==
        std::vector<std::string>{"no-gold", "no-clue", "elsewhere"});
  CHECK(summary.stats.queries == fixture.gold.size());

  CHECK_THROWS_AS(TrainFromTweets(linker, {no_gold, no_clue}, {}),
                  InsufficientDataError);
}

}  // namespace
}  // namespace emn
