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

// End-to-end EMN construction from loaded corpora.

#ifndef EMN_PIPELINE_H_
#define EMN_PIPELINE_H_

#include <string>
#include <vector>

#include "emn/corpus.h"
#include "emn/graph.h"
#include "emn/knowledge.h"

namespace emn {

struct Corpora {
  std::vector<Triple> triples;
  std::vector<EntityRecord> records;
  // Recent tweets used for spotting and as the contextual knowledge source.
  std::vector<Tweet> pool;
  std::vector<PageViewRecord> page_views;
  PhraseDictionary dict;
  StopwordSet stopwords;
};

struct BuildOptions {
  // Records of this type (case-insensitive) are the domain entities; empty
  // means every record.
  std::string entity_type;
  int m_relations = kDefaultTopRelations;
  int context_cap = kDefaultContextCap;
  int salience_window_days = kDefaultSalienceWindowDays;
  std::vector<std::string> type_keywords;
  Date as_of{};
  // When false, entity models are built from factual knowledge only.
  bool include_context = true;
  int threads = 1;
};

struct BuildReport {
  std::vector<RelationScore> relations;
  std::vector<std::string> top_relations;
  std::vector<std::string> spotted;
  // Spotted entities left out because neither knowledge source gave a clue.
  std::vector<std::string> empty_models;
};

// Spots domain entities in the pool, acquires their knowledge, builds their
// models and assembles the EMN. Throws EmptyCorpusError if no entity ends up
// with a model.
EmnGraph BuildEmn(const Corpora &corpora, const BuildOptions &options,
                  BuildReport *report = nullptr);

}  // namespace emn

#endif  // EMN_PIPELINE_H_
