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

#include "emn/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "emn/errors.h"
#include "emn/textprep.h"
#include "str_util.h"

namespace emn {

namespace {

constexpr std::string_view kSnapshotMagic = "emn-snapshot";
constexpr int kSnapshotVersion = 1;

void AddClues(const ClueSet &clues, EntityModel *model, uint8_t origin,
              bool count) {
  auto add = [&](const std::map<std::string, int> &counts) {
    for (const auto &[name, n] : counts) {
      ClueStat &stat = (*model)[name];
      stat.origin |= origin;
      if (count) stat.frequency += n;
    }
  };
  add(clues.phrases);
  add(clues.unigrams);
}

}  // namespace

std::string FormatOrigin(uint8_t origin) {
  std::string out;
  if (origin & kFactualOrigin) out.push_back('F');
  if (origin & kContextualOrigin) out.push_back('C');
  if (out.empty()) out = "-";
  return out;
}

uint8_t ParseOrigin(std::string_view text) {
  if (text == "-") return 0;
  uint8_t origin = 0;
  for (char c : text) {
    if (c == 'F') {
      origin |= kFactualOrigin;
    } else if (c == 'C') {
      origin |= kContextualOrigin;
    } else {
      throw FormatError("bad clue origin '" + std::string(text) + "'");
    }
  }
  return origin;
}

double Specificity(size_t num_entities, size_t degree) {
  return std::log(static_cast<double>(num_entities) /
                  static_cast<double>(degree));
}

EntityModel BuildEntityModel(const std::string &entity_id,
                             const FactualKnowledge &factual,
                             const ContextualKnowledge &contextual,
                             const PhraseDictionary &dict,
                             const StopwordSet &stopwords) {
  EntityModel model;
  for (const Tweet &tweet : contextual.tweets) {
    AddClues(TextClues(tweet.text, dict, stopwords, ClueMode::kEntityModel),
             &model, kContextualOrigin, /*count=*/true);
  }
  for (const std::string &text : factual.texts) {
    AddClues(TextClues(text, dict, stopwords, ClueMode::kEntityModel), &model,
             kFactualOrigin, /*count=*/false);
  }
  if (model.empty()) throw EmptyModelError(entity_id);
  for (auto &[name, stat] : model) {
    if (stat.frequency == 0) stat.frequency = 1;
  }
  return model;
}

EmnGraph EmnGraph::Assemble(const std::map<std::string, EntityModel> &models,
                            const std::map<std::string, int64_t> &salience,
                            const std::map<std::string, EntityRecord> &records,
                            Date built_at, std::string entity_type) {
  auto same_keys = [&](const auto &other) {
    return other.size() == models.size() &&
           std::equal(models.begin(), models.end(), other.begin(),
                      [](const auto &a, const auto &b) {
                        return a.first == b.first;
                      });
  };
  if (!same_keys(salience)) {
    throw KeyMismatchError("salience keys differ from model keys");
  }
  if (!same_keys(records)) {
    throw KeyMismatchError("record keys differ from model keys");
  }

  std::vector<EntityNode> entities;
  std::vector<EdgeSpec> edges;
  std::map<std::string, uint8_t> origins;
  for (const auto &[id, model] : models) {
    if (model.empty()) throw EmptyModelError(id);
    entities.push_back({id, records.at(id).label, salience.at(id)});
    for (const auto &[clue, stat] : model) {
      edges.push_back({clue, id, stat.frequency});
      origins[clue] |= stat.origin;
    }
  }
  return FromParts(std::move(entities), edges, origins, built_at,
                   std::move(entity_type));
}

EmnGraph EmnGraph::FromParts(std::vector<EntityNode> entities,
                             const std::vector<EdgeSpec> &edges,
                             const std::map<std::string, uint8_t> &origins,
                             Date built_at, std::string entity_type) {
  EmnGraph g;
  g.built_at_ = built_at;
  g.entity_type_ = std::move(entity_type);

  std::sort(entities.begin(), entities.end(),
            [](const EntityNode &a, const EntityNode &b) {
              return a.entity_id < b.entity_id;
            });
  for (size_t i = 0; i < entities.size(); ++i) {
    if (entities[i].entity_id.empty()) throw FormatError("empty entity id");
    if (i > 0 && entities[i].entity_id == entities[i - 1].entity_id) {
      throw DuplicateIdError(entities[i].entity_id, 0);
    }
    if (entities[i].salience < 0) {
      throw NegativeCountError(
          "negative salience for '" + entities[i].entity_id + "'", 0);
    }
    g.entity_index_.emplace(entities[i].entity_id, static_cast<uint32_t>(i));
  }
  g.entities_ = std::move(entities);

  std::set<std::string_view> clue_names;
  for (const EdgeSpec &e : edges) {
    if (e.clue.empty()) throw FormatError("empty clue name");
    clue_names.insert(e.clue);
  }
  for (std::string_view name : clue_names) {
    uint32_t index = static_cast<uint32_t>(g.clues_.size());
    auto origin = origins.find(std::string(name));
    g.clues_.push_back({std::string(name), 0.0,
                        origin == origins.end() ? uint8_t{0} : origin->second});
    g.clue_index_.emplace(std::string(name), index);
  }

  g.clue_edges_.assign(g.clues_.size(), {});
  g.entity_edges_.assign(g.entities_.size(), {});
  for (const EdgeSpec &e : edges) {
    auto entity = g.FindEntity(e.entity_id);
    if (!entity) throw UnknownEntityError(e.entity_id);
    if (e.frequency < 1) {
      throw FormatError("edge frequency must be >= 1 for '" + e.clue + "' -> '" +
                        e.entity_id + "'");
    }
    uint32_t clue = *g.FindClue(e.clue);
    g.clue_edges_[clue].push_back({*entity, e.frequency});
    g.entity_edges_[*entity].push_back({clue, e.frequency});
  }
  auto by_node = [](const Posting &a, const Posting &b) {
    return a.node < b.node;
  };
  for (size_t c = 0; c < g.clue_edges_.size(); ++c) {
    auto &list = g.clue_edges_[c];
    std::sort(list.begin(), list.end(), by_node);
    for (size_t i = 1; i < list.size(); ++i) {
      if (list[i].node == list[i - 1].node) {
        throw FormatError("duplicate edge '" + g.clues_[c].name + "' -> '" +
                          g.entities_[list[i].node].entity_id + "'");
      }
    }
    g.num_edges_ += list.size();
  }
  for (size_t e = 0; e < g.entity_edges_.size(); ++e) {
    if (g.entity_edges_[e].empty()) {
      throw EmptyModelError(g.entities_[e].entity_id);
    }
    std::sort(g.entity_edges_[e].begin(), g.entity_edges_[e].end(), by_node);
  }
  g.ComputeSpecificity(1.0);
  return g;
}

void EmnGraph::ComputeSpecificity(double scale) {
  for (size_t c = 0; c < clues_.size(); ++c) {
    clues_[c].specificity =
        scale * Specificity(entities_.size(), clue_edges_[c].size());
  }
}

std::optional<uint32_t> EmnGraph::FindEntity(std::string_view entity_id) const {
  auto it = entity_index_.find(entity_id);
  if (it == entity_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<uint32_t> EmnGraph::FindClue(std::string_view name) const {
  auto it = clue_index_.find(name);
  if (it == clue_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::string, double>> EmnGraph::EntityVector(
    std::string_view entity_id) const {
  auto entity = FindEntity(entity_id);
  if (!entity) throw UnknownEntityError(std::string(entity_id));
  std::vector<std::pair<std::string, double>> vec;
  for (const Posting &p : entity_edges_[*entity]) {
    const ClueNode &clue = clues_[p.node];
    vec.emplace_back(clue.name,
                     clue.specificity * static_cast<double>(p.frequency));
  }
  return vec;
}

EmnGraph EmnGraph::WithScaledSpecificity(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw ConfigError("specificity scale must be a positive finite number");
  }
  EmnGraph copy = *this;
  copy.ComputeSpecificity(factor);
  return copy;
}

// ----------------------------------------------------------------------------
// Snapshots

void EmnGraph::Save(std::ostream &out) const {
  out << kSnapshotMagic << '\t' << kSnapshotVersion << '\n';
  out << "built_at\t" << FormatDate(built_at_) << '\n';
  out << "entity_type\t" << entity_type_ << '\n';
  out << "[entities]\t" << entities_.size() << '\n';
  for (const EntityNode &e : entities_) {
    out << e.entity_id << '\t' << e.name << '\t' << e.salience << '\n';
  }
  out << "[clues]\t" << clues_.size() << '\n';
  for (const ClueNode &c : clues_) {
    out << c.name << '\t' << str::FormatDouble(c.specificity) << '\t'
        << FormatOrigin(c.origin) << '\n';
  }
  out << "[edges]\t" << num_edges_ << '\n';
  for (size_t c = 0; c < clues_.size(); ++c) {
    for (const Posting &p : clue_edges_[c]) {
      out << clues_[c].name << '\t' << entities_[p.node].entity_id << '\t'
          << p.frequency << '\n';
    }
  }
}

void EmnGraph::SaveToFile(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  Save(out);
  if (!out) throw IoError("error writing '" + path + "'");
}

EmnGraph EmnGraph::Load(std::istream &in) {
  std::string line;
  size_t lineno = 0;
  auto next = [&](std::string_view what) {
    if (!str::GetLine(in, &line)) {
      throw FormatError("snapshot truncated, expected " + std::string(what));
    }
    ++lineno;
    return str::SplitTabs(line);
  };
  auto header = [&](std::string_view key) {
    auto cols = next(key);
    if (cols.size() != 2 || cols[0] != key) {
      throw FormatError("expected '" + std::string(key) + "'", lineno);
    }
    return std::string(cols[1]);
  };

  int version = str::ParseInt<int>(header(kSnapshotMagic), lineno);
  if (version != kSnapshotVersion) {
    throw FormatError("unsupported snapshot version " + std::to_string(version),
                      lineno);
  }
  Date built_at = ParseDate(header("built_at"));
  std::string entity_type = header("entity_type");

  auto section = [&](std::string_view name, size_t columns, auto &&row) {
    size_t count = str::ParseInt<size_t>(header(name), lineno);
    for (size_t i = 0; i < count; ++i) {
      auto cols = next(name);
      if (cols.size() != columns) {
        throw FormatError("expected " + std::to_string(columns) + " columns",
                          lineno);
      }
      row(cols);
    }
  };

  std::vector<EntityNode> entities;
  section("[entities]", 3, [&](const std::vector<std::string_view> &cols) {
    entities.push_back({std::string(cols[0]), std::string(cols[1]),
                        str::ParseInt<int64_t>(cols[2], lineno)});
  });
  std::map<std::string, uint8_t> origins;
  section("[clues]", 3, [&](const std::vector<std::string_view> &cols) {
    // The stored specificity is only checked for syntax.
    str::ParseDouble(cols[1], lineno);
    uint8_t origin;
    try {
      origin = ParseOrigin(cols[2]);
    } catch (const FormatError &e) {
      throw FormatError(e.what(), lineno);
    }
    if (!origins.emplace(std::string(cols[0]), origin).second) {
      throw DuplicateIdError(std::string(cols[0]), lineno);
    }
  });
  std::vector<EdgeSpec> edges;
  section("[edges]", 3, [&](const std::vector<std::string_view> &cols) {
    std::string clue(cols[0]);
    if (origins.count(clue) == 0) {
      throw FormatError("edge refers to unknown clue '" + clue + "'", lineno);
    }
    edges.push_back({std::move(clue), std::string(cols[1]),
                     str::ParseInt<int64_t>(cols[2], lineno)});
  });
  while (str::GetLine(in, &line)) {
    if (!str::Trim(line).empty()) {
      throw FormatError("trailing data after snapshot", lineno + 1);
    }
    ++lineno;
  }

  EmnGraph g = FromParts(std::move(entities), edges, origins, built_at,
                         std::move(entity_type));
  if (g.num_clues() != origins.size()) {
    throw FormatError("snapshot lists clues without edges");
  }
  return g;
}

EmnGraph EmnGraph::LoadFromFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return Load(in);
}

}  // namespace emn
