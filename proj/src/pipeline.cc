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

#include "emn/pipeline.h"

#include <optional>
#include <set>

#include "emn/errors.h"
#include "parallel.h"
#include "unicode_util.h"

namespace emn {

EmnGraph BuildEmn(const Corpora &corpora, const BuildOptions &options,
                  BuildReport *report) {
  BuildReport local;
  BuildReport &rep = report != nullptr ? *report : local;

  std::string type = unicode::ToLower(options.entity_type);
  std::vector<EntityRecord> domain;
  std::set<std::string> members;
  for (const EntityRecord &r : corpora.records) {
    if (type.empty() || unicode::ToLower(r.entity_type) == type) {
      domain.push_back(r);
      members.insert(r.entity_id);
    }
  }
  if (domain.empty()) {
    throw EmptyCorpusError("no entity records of type '" + options.entity_type +
                           "'");
  }

  if (!corpora.triples.empty()) {
    rep.relations = RankRelationships(corpora.triples, members);
    rep.top_relations = TopRelations(rep.relations, options.m_relations);
  }

  std::set<std::string> spotted = SpotEntities(corpora.pool, domain);
  rep.spotted.assign(spotted.begin(), spotted.end());
  const auto records = IndexRecords(corpora.records);

  TweetPool pool;
  if (options.include_context) pool = TweetPool::Prepare(corpora.pool);

  std::vector<std::optional<EntityModel>> models(rep.spotted.size());
  std::vector<int64_t> salience(rep.spotted.size());
  ParallelFor(rep.spotted.size(), options.threads, [&](size_t i) {
    const std::string &id = rep.spotted[i];
    const EntityRecord &record = records.at(id);
    FactualKnowledge factual =
        ExtractFactual(id, records, corpora.triples, rep.top_relations);
    ContextualKnowledge contextual;
    if (options.include_context) {
      contextual = CollectContextual(record, pool, options.type_keywords,
                                     options.context_cap);
    }
    salience[i] = TemporalSalience(id, corpora.page_views, options.as_of,
                                   options.salience_window_days);
    try {
      models[i] = BuildEntityModel(id, factual, contextual, corpora.dict,
                                   corpora.stopwords);
    } catch (const EmptyModelError &) {
      models[i].reset();
    }
  });

  std::map<std::string, EntityModel> by_id;
  std::map<std::string, int64_t> salience_by_id;
  std::map<std::string, EntityRecord> records_by_id;
  for (size_t i = 0; i < rep.spotted.size(); ++i) {
    const std::string &id = rep.spotted[i];
    if (!models[i]) {
      rep.empty_models.push_back(id);
      continue;
    }
    by_id.emplace(id, std::move(*models[i]));
    salience_by_id.emplace(id, salience[i]);
    records_by_id.emplace(id, records.at(id));
  }
  if (by_id.empty()) throw EmptyCorpusError("no entity could be modeled");
  return EmnGraph::Assemble(by_id, salience_by_id, records_by_id,
                            options.as_of, options.entity_type);
}

}  // namespace emn
