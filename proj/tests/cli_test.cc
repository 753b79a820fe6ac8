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

#include <doctest.h>

#include "emn/eval.h"
#include "emn/graph.h"
#include "emn/ranker.h"
#include "testing.h"

namespace emn {
namespace {

using testing::ReadFile;
using testing::RunTool;
using testing::TempDir;
using testing::WriteFile;

std::vector<std::string> BuildArgs(const TempDir &dir) {
  return {"build-emn",       "--labels",    dir.File("labels.tsv"),
          "--triples",       dir.File("triples.tsv"),
          "--tweets",        dir.File("tweets.jsonl"),
          "--pageviews",     dir.File("pageviews.tsv"),
          "--phrases",       dir.File("phrases.txt"),
          "--stopwords",     dir.File("stopwords.txt"),
          "--as-of",         "2014-07-31",
          "--type",          "Movie",
          "--out",           dir.File("emn.txt")};
}

TEST_CASE("help and usage errors") {
  std::string out, err;
  CHECK(RunTool({"--help"}, &out) == 0);
  CHECK(out.find("build-emn") != std::string::npos);
  CHECK(RunTool({"eval", "--help"}) == 0);
  CHECK(RunTool({}, nullptr, &err) == 2);
  CHECK(RunTool({"frobnicate"}) == 2);
  CHECK(RunTool({"link"}, nullptr, &err) == 2);
  CHECK(err.find("--emn") != std::string::npos);
  CHECK(RunTool({"train", "--c", "fast", "--emn", "x", "--tweets", "y",
                 "--out", "z"}) == 2);
  CHECK(RunTool({"eval", "recall", "--emn", "x", "--gold", "y", "--format",
                 "xml"}) == 2);
}

TEST_CASE("domain errors exit with 1") {
  TempDir dir;
  std::string err;
  CHECK(RunTool({"inspect", "--emn", dir.File("missing.txt")}, nullptr,
                &err) == 1);
  CHECK_FALSE(err.empty());
  WriteFile(dir.File("bad.txt"), "not a snapshot\n");
  CHECK(RunTool({"inspect", "--emn", dir.File("bad.txt")}) == 1);
}

TEST_CASE("full pipeline on a fixture") {
  TempDir dir;
  testing::WriteFixture(testing::SeparableFixture(), dir);
  std::string out, err;
  REQUIRE(RunTool(BuildArgs(dir), &out, &err) == 0);
  CHECK(out.find("entities\t5\n") != std::string::npos);

  REQUIRE(RunTool({"train", "--emn", dir.File("emn.txt"), "--tweets",
                   dir.File("gold.jsonl"), "--stopwords",
                   dir.File("stopwords.txt"), "--out", dir.File("model.tsv")},
                  &out, &err) == 0);
  CHECK(out.find("queries\t25\n") != std::string::npos);
  CHECK(out.find("swapped_pairs\t0\n") != std::string::npos);
  TrainedRanker ranker = TrainedRanker::LoadFromFile(dir.File("model.tsv"));
  CHECK(ranker.dimension() == 2);

  SUBCASE("link") {
    Tweet t = LoadTweets(dir.File("gold.jsonl"))[7];
    REQUIRE(RunTool({"link", "--emn", dir.File("emn.txt"), "--ranker",
                     dir.File("model.tsv"), "--type", "Movie", "--text",
                     t.text, "--top", "1"},
                    &out, &err) == 0);
    CHECK(out.rfind(*t.gold_entity + "\t", 0) == 0);
    CHECK(RunTool({"link", "--emn", dir.File("emn.txt"), "--ranker",
                   dir.File("model.tsv"), "--type", "Book", "--text",
                   t.text}) == 2);
    CHECK(RunTool({"link", "--emn", dir.File("emn.txt"), "--ranker",
                   dir.File("model.tsv"), "--text", "zzz"}) == 1);
  }
  SUBCASE("inspect") {
    REQUIRE(RunTool({"inspect", "--emn", dir.File("emn.txt")}, &out) == 0);
    CHECK(out.find("entity_type\tMovie\n") != std::string::npos);
    REQUIRE(RunTool({"inspect", "--emn", dir.File("emn.txt"), "--entity",
                     "Alpha_(film)"},
                    &out) == 0);
    CHECK(out.rfind("# Alpha_(film)\tAlpha\tsalience=", 0) == 0);
    CHECK(RunTool({"inspect", "--emn", dir.File("emn.txt"), "--entity",
                   "Nope"}) == 1);
  }
  SUBCASE("evaluation writes reports and dumps") {
    REQUIRE(RunTool({"eval", "cv", "--emn", dir.File("emn.txt"), "--gold",
                     dir.File("gold.jsonl"), "--stopwords",
                     dir.File("stopwords.txt"), "--format", "tsv", "--report",
                     dir.File("cv.tsv"), "--dump", dir.File("cv.dump")},
                    &out, &err) == 0);
    CHECK(out == ReadFile(dir.File("cv.tsv")));
    CHECK(out.find("disambiguation_accuracy\t100\n") != std::string::npos);
    CHECK(ReadFile(dir.File("cv.dump")).rfind("tweet_id\tfold", 0) == 0);

    REQUIRE(RunTool({"eval", "recall", "--emn", dir.File("emn.txt"), "--gold",
                     dir.File("gold.jsonl"), "--k", "1"},
                    &out) == 0);
    CHECK(out.find("recall") != std::string::npos);
  }
}

TEST_CASE("flags override the config file") {
  TempDir dir;
  testing::WriteFixture(testing::SeparableFixture(), dir);
  WriteFile(dir.File("emn.conf"),
            "entity_type = Movie\nas_of_date = 2014-07-31\nk = 1\n"
            "emn = " + dir.File("emn.txt") + "\n");
  std::vector<std::string> args = BuildArgs(dir);
  REQUIRE(RunTool(args) == 0);

  std::string from_file, from_flag;
  REQUIRE(RunTool({"--config", dir.File("emn.conf"), "eval", "recall",
                   "--gold", dir.File("gold.jsonl"), "--format", "tsv"},
                  &from_file) == 0);
  CHECK(from_file.find("k\t1\n") != std::string::npos);
  REQUIRE(RunTool({"--config", dir.File("emn.conf"), "eval", "recall",
                   "--gold", dir.File("gold.jsonl"), "--format", "tsv", "--k",
                   "7"},
                  &from_flag) == 0);
  CHECK(from_flag.find("k\t7\n") != std::string::npos);

  WriteFile(dir.File("broken.conf"), "colour = blue\n");
  CHECK(RunTool({"--config", dir.File("broken.conf"), "inspect", "--emn",
                 dir.File("emn.txt")}) == 2);
}

}  // namespace
}  // namespace emn
