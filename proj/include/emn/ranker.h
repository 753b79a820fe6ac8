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

// Linear pairwise ranking model.
//
// For every training query the gold candidate is paired with each other
// candidate and the model minimizes
//
//   1/2 |w|^2 + C * sum_pairs max(0, 1 - w . (f_gold - f_other))
//
// by mini-batch subgradient descent with step size learning_rate / sqrt(t).
// An epoch whose result would increase the objective is retried with half the
// step size (up to kMaxBacktracks times) and otherwise discarded, so the
// objective never increases from one epoch to the next.

#ifndef EMN_RANKER_H_
#define EMN_RANKER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace emn {

// Scores within this relative distance of each other are treated as ties and
// ordered by the caller's tie rule instead.
inline constexpr double kScoreTieTolerance = 1e-9;

// One training query: candidate feature vectors and the gold candidate.
struct RankingQuery {
  std::string id;
  std::vector<std::string> candidates;
  std::vector<std::vector<double>> features;
  size_t gold = 0;
};

struct TrainOptions {
  double c_tradeoff = 0.01;
  int epochs = 200;
  double learning_rate = 0.1;
  uint64_t seed = 7;
  // Pairs per update, visited in a seeded shuffled order; 0 means one
  // full-batch step per epoch.
  int batch_size = 64;
};

inline constexpr int kMaxBacktracks = 30;

struct TrainStats {
  size_t queries = 0;
  size_t pairs = 0;
  // Queries skipped by the caller (gold not among the candidates).
  size_t skipped = 0;
  // Pairs the trained model orders wrongly on the training data.
  size_t swapped_pairs = 0;
  // Objective value before the first epoch and after every epoch.
  std::vector<double> loss_history;
};

class TrainedRanker {
 public:
  TrainedRanker() = default;
  TrainedRanker(std::vector<double> weights, std::string trained_on)
      : weights_(std::move(weights)), trained_on_(std::move(trained_on)) {}

  const std::vector<double> &weights() const { return weights_; }
  const std::string &trained_on() const { return trained_on_; }
  size_t dimension() const { return weights_.size(); }

  double Score(std::span<const double> features) const;

  // One header line, then one weight per line.
  void Save(std::ostream &out) const;
  void SaveToFile(const std::string &path) const;
  static TrainedRanker Load(std::istream &in);
  static TrainedRanker LoadFromFile(const std::string &path);

  bool operator==(const TrainedRanker &) const = default;

 private:
  std::vector<double> weights_;
  std::string trained_on_;
};

// Regularized pairwise hinge objective at `weights`.
double PairwiseObjective(const std::vector<RankingQuery> &queries,
                         std::span<const double> weights, double c_tradeoff);

// Throws InsufficientDataError when the queries yield no pair, ConfigError for
// invalid options.
TrainedRanker TrainPairwise(const std::vector<RankingQuery> &queries,
                            const TrainOptions &options,
                            TrainStats *stats = nullptr);

// Indices 0..n-1 ordered by score descending. Scores within
// kScoreTieTolerance (chained between neighbours) form a tie group, ordered
// by `tie_less`.
template <typename TieLess>
std::vector<size_t> OrderByScore(std::span<const double> scores,
                                 TieLess tie_less);

// Hex FNV-1a digest of the training data, used as the ranker's fingerprint.
std::string FingerprintQueries(const std::vector<RankingQuery> &queries);

}  // namespace emn

#include "emn/ranker_inl.h"

#endif  // EMN_RANKER_H_
