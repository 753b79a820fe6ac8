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

// Entity models and the Entity Model Network (EMN).
//
// An EMN is a bipartite property graph. Entity nodes carry a display name and
// a temporal salience; clue nodes (phrases and unigrams) carry a specificity
// ln(|entities| / degree); directed clue -> entity edges carry the number of
// times the clue occurs in the entity's contextual tweets.

#ifndef EMN_GRAPH_H_
#define EMN_GRAPH_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emn/corpus.h"
#include "emn/knowledge.h"

namespace emn {

// Which knowledge source produced a clue. Bit flags.
enum ClueOrigin : uint8_t {
  kFactualOrigin = 1,
  kContextualOrigin = 2,
};

std::string FormatOrigin(uint8_t origin);
uint8_t ParseOrigin(std::string_view text);

struct ClueStat {
  int64_t frequency = 0;
  uint8_t origin = 0;

  bool operator==(const ClueStat &) const = default;
};

// One entity's clues keyed by clue name.
using EntityModel = std::map<std::string, ClueStat>;

// Frequency of a clue is its number of occurrences in the cleaned contextual
// tweets; clues seen only in factual texts get frequency 1. Throws
// EmptyModelError when neither source yields a clue.
EntityModel BuildEntityModel(const std::string &entity_id,
                             const FactualKnowledge &factual,
                             const ContextualKnowledge &contextual,
                             const PhraseDictionary &dict,
                             const StopwordSet &stopwords);

struct EntityNode {
  std::string entity_id;
  std::string name;
  int64_t salience = 0;

  bool operator==(const EntityNode &) const = default;
};

struct ClueNode {
  std::string name;
  double specificity = 0.0;
  uint8_t origin = 0;
};

// An adjacency entry: the node on the other side and the edge frequency.
struct Posting {
  uint32_t node = 0;
  int64_t frequency = 0;

  bool operator==(const Posting &) const = default;
};

struct EdgeSpec {
  std::string clue;
  std::string entity_id;
  int64_t frequency = 0;
};

// Immutable once built; safe to share between threads.
class EmnGraph {
 public:
  EmnGraph() = default;

  // Integrates per-entity models through their common clues. All three maps
  // must have the same keys (KeyMismatchError); every model must be
  // non-empty (EmptyModelError).
  static EmnGraph Assemble(const std::map<std::string, EntityModel> &models,
                           const std::map<std::string, int64_t> &salience,
                           const std::map<std::string, EntityRecord> &records,
                           Date built_at, std::string entity_type = "");

  // Builds a graph from explicit node and edge lists. Every edge endpoint must
  // exist (UnknownEntityError / FormatError), there is at most one edge per
  // pair, frequencies are >= 1, and every entity has at least one edge
  // (EmptyModelError). Clue origins default to 0 when absent from `origins`.
  static EmnGraph FromParts(std::vector<EntityNode> entities,
                            const std::vector<EdgeSpec> &edges,
                            const std::map<std::string, uint8_t> &origins,
                            Date built_at, std::string entity_type = "");

  size_t num_entities() const { return entities_.size(); }
  size_t num_clues() const { return clues_.size(); }
  size_t num_edges() const { return num_edges_; }

  // Nodes are sorted by id / name; indices are positions in these vectors.
  const std::vector<EntityNode> &entities() const { return entities_; }
  const std::vector<ClueNode> &clues() const { return clues_; }

  std::optional<uint32_t> FindEntity(std::string_view entity_id) const;
  std::optional<uint32_t> FindClue(std::string_view name) const;

  // Entities adjacent to a clue, by ascending entity index.
  std::span<const Posting> ClueEdges(uint32_t clue) const {
    return clue_edges_[clue];
  }
  // Clues adjacent to an entity, by ascending clue index.
  std::span<const Posting> EntityEdges(uint32_t entity) const {
    return entity_edges_[entity];
  }

  // Sparse vector over clue names: specificity(c) * frequency(c, e) for every
  // clue adjacent to the entity, ordered by clue name. Throws
  // UnknownEntityError.
  std::vector<std::pair<std::string, double>> EntityVector(
      std::string_view entity_id) const;

  // Copy of the graph with every specificity multiplied by `factor` (> 0).
  // Equivalent to changing the logarithm base.
  EmnGraph WithScaledSpecificity(double factor) const;

  Date built_at() const { return built_at_; }
  const std::string &entity_type() const { return entity_type_; }

  // Versioned text snapshot with [entities], [clues] and [edges] sections.
  // Specificities are written for inspection but recomputed on load.
  void Save(std::ostream &out) const;
  void SaveToFile(const std::string &path) const;
  static EmnGraph Load(std::istream &in);
  static EmnGraph LoadFromFile(const std::string &path);

 private:
  void ComputeSpecificity(double scale);

  std::vector<EntityNode> entities_;
  std::vector<ClueNode> clues_;
  std::vector<std::vector<Posting>> clue_edges_;
  std::vector<std::vector<Posting>> entity_edges_;
  std::map<std::string, uint32_t, std::less<>> entity_index_;
  std::map<std::string, uint32_t, std::less<>> clue_index_;
  size_t num_edges_ = 0;
  Date built_at_{};
  std::string entity_type_;
};

// Specificity of a clue adjacent to `degree` of `num_entities` entities.
double Specificity(size_t num_entities, size_t degree);

}  // namespace emn

#endif  // EMN_GRAPH_H_
