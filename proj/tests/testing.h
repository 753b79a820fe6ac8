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

// Shared helpers for the test binaries: scratch directories, random
// synthetic graphs and the constructed linking fixtures.

#ifndef EMN_TESTS_TESTING_H_
#define EMN_TESTS_TESTING_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "emn/corpus.h"
#include "emn/graph.h"
#include "emn/pipeline.h"
#include "emn/textprep.h"

namespace emn::testing {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::string &path() const { return path_; }
  std::string File(const std::string &name) const;

 private:
  std::string path_;
};

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, const std::string &content);

// Alphabetic pseudo-word for index n ("qa", "qb", ...); never a stop word and
// never contains a digit, so it survives cleaning unchanged.
std::string Word(size_t n);

// Random bipartite graph with every entity and every clue on at least one
// edge. Clue names mix single words and two-word phrases.
struct SyntheticGraph {
  std::vector<EntityNode> entities;
  std::vector<EdgeSpec> edges;
  std::vector<std::string> clue_names;
  EmnGraph graph;
};

SyntheticGraph RandomGraph(std::mt19937_64 &rng, int max_entities,
                           int max_clues);

// Random tweet-side clue set drawn from `names` plus a few unknown clues.
ClueSet RandomClues(std::mt19937_64 &rng,
                    const std::vector<std::string> &names);

// Candidate selection recomputed from scratch: specificities from entity
// degrees, evidence summed per entity over its own edges in long double, then
// ordered by evidence with near-equal scores (relative kScoreTieTolerance,
// chained) broken by higher salience and entity id.
struct OracleCandidate {
  std::string entity_id;
  long double evidence = 0.0L;
  int64_t salience = 0;
};

std::vector<OracleCandidate> BruteForceCandidates(const EmnGraph &graph,
                                                  const ClueSet &clues, int k);

// Corpora, build options and gold tweets of a constructed linking scenario.
struct Fixture {
  Corpora corpora;
  BuildOptions build;
  std::vector<Tweet> gold;
};

// Five movies with disjoint vocabularies known from their descriptions; every
// gold tweet carries two clues of its entity and one of the next entity.
Fixture SeparableFixture();

// The gold clues of every entity occur only in tweets that mention it; the
// descriptions hold a separate vocabulary that only some gold tweets use.
Fixture ContextOnlyFixture();

// Contextual tweets repeat words the descriptions already contain, so the
// contextual knowledge adds nothing.
Fixture FactualOnlyFixture();

// Explicit mentions ("<label> tonight") of the fixture's entities, one per
// entity, labelled explicit.
std::vector<Tweet> ExplicitTweets(const Fixture &fixture);

// Tweets of words no fixture knows, labelled nil.
std::vector<Tweet> NilTweets(int n);

// Writes the fixture's input files into `dir` (labels.tsv, triples.tsv,
// tweets.jsonl, pageviews.tsv, phrases.txt, stopwords.txt, gold.jsonl).
void WriteFixture(const Fixture &fixture, const TempDir &dir);

// Runs the command line tool in-process. The program name is supplied.
int RunTool(const std::vector<std::string> &args, std::string *out = nullptr,
            std::string *err = nullptr);

}  // namespace emn::testing

#endif  // EMN_TESTS_TESTING_H_
