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

#include <sstream>

#include <doctest.h>

#include "emn/errors.h"
#include "emn/pipeline.h"
#include "testing.h"

namespace emn {
namespace {

std::string Snapshot(const EmnGraph &graph) {
  std::ostringstream out;
  graph.Save(out);
  return out.str();
}

TEST_CASE("build on the separable fixture") {
  testing::Fixture f = testing::SeparableFixture();
  BuildReport report;
  EmnGraph graph = BuildEmn(f.corpora, f.build, &report);
  CHECK(graph.num_entities() == 5);
  CHECK(report.spotted.size() == 5);
  CHECK(report.empty_models.empty());
  CHECK(graph.entity_type() == "Movie");
  // Each description word belongs to one entity.
  for (const ClueNode &clue : graph.clues()) {
    CHECK(clue.specificity == doctest::Approx(std::log(5.0)));
  }
}

TEST_CASE("context switch") {
  testing::Fixture f = testing::ContextOnlyFixture();
  EmnGraph with = BuildEmn(f.corpora, f.build);
  f.build.include_context = false;
  EmnGraph without = BuildEmn(f.corpora, f.build);
  CHECK(without.num_clues() < with.num_clues());
  for (const ClueNode &clue : without.clues()) {
    CHECK(clue.origin == kFactualOrigin);
  }
}

TEST_CASE("builds do not depend on thread count") {
  testing::Fixture f = testing::ContextOnlyFixture();
  std::string serial = Snapshot(BuildEmn(f.corpora, f.build));
  f.build.threads = 4;
  CHECK(Snapshot(BuildEmn(f.corpora, f.build)) == serial);
}

TEST_CASE("build errors") {
  testing::Fixture f = testing::SeparableFixture();
  Corpora empty_pool = f.corpora;
  empty_pool.pool.clear();
  CHECK_THROWS_AS(BuildEmn(empty_pool, f.build), EmptyCorpusError);

  BuildOptions other_type = f.build;
  other_type.entity_type = "Book";
  CHECK_THROWS_AS(BuildEmn(f.corpora, other_type), Error);
}

}  // namespace
}  // namespace emn
