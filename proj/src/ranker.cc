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

#include "emn/ranker.h"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "emn/errors.h"
#include "str_util.h"

namespace emn {

namespace {

constexpr std::string_view kModelMagic = "emn-ranker";
constexpr int kModelVersion = 1;

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

// Difference vectors f_gold - f_other for every pair of every query.
std::vector<std::vector<double>> PairDifferences(
    const std::vector<RankingQuery> &queries, size_t *dimension) {
  std::vector<std::vector<double>> diffs;
  *dimension = 0;
  for (const RankingQuery &q : queries) {
    if (q.features.empty()) continue;
    if (q.gold >= q.features.size()) {
      throw ConfigError("query '" + q.id + "' has an out-of-range gold index");
    }
    for (const auto &f : q.features) {
      if (*dimension == 0) *dimension = f.size();
      if (f.size() != *dimension || f.empty()) {
        throw ConfigError("query '" + q.id + "' has inconsistent features");
      }
      for (double v : f) {
        if (!std::isfinite(v)) {
          throw ConfigError("query '" + q.id + "' has a non-finite feature");
        }
      }
    }
    const auto &gold = q.features[q.gold];
    for (size_t i = 0; i < q.features.size(); ++i) {
      if (i == q.gold) continue;
      std::vector<double> d(*dimension);
      for (size_t j = 0; j < d.size(); ++j) d[j] = gold[j] - q.features[i][j];
      diffs.push_back(std::move(d));
    }
  }
  return diffs;
}

double Objective(const std::vector<std::vector<double>> &diffs,
                 std::span<const double> w, double c) {
  double hinge = 0.0;
  for (const auto &d : diffs) hinge += std::max(0.0, 1.0 - Dot(w, d));
  return 0.5 * Dot(w, w) + c * hinge;
}

void Shuffle(std::vector<size_t> *order, std::mt19937_64 *rng) {
  for (size_t i = order->size(); i > 1; --i) {
    size_t j = static_cast<size_t>((*rng)() % i);
    std::swap((*order)[i - 1], (*order)[j]);
  }
}

}  // namespace

double TrainedRanker::Score(std::span<const double> features) const {
  if (features.size() != weights_.size()) {
    throw ConfigError("feature dimension " + std::to_string(features.size()) +
                      " does not match ranker dimension " +
                      std::to_string(weights_.size()));
  }
  return Dot(weights_, features);
}

void TrainedRanker::Save(std::ostream &out) const {
  out << kModelMagic << '\t' << kModelVersion << '\t'
      << "dim=" << weights_.size() << '\t' << "trained_on=" << trained_on_
      << '\n';
  for (double w : weights_) out << str::FormatDouble(w) << '\n';
}

void TrainedRanker::SaveToFile(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  Save(out);
  if (!out) throw IoError("error writing '" + path + "'");
}

TrainedRanker TrainedRanker::Load(std::istream &in) {
  std::string line;
  if (!str::GetLine(in, &line)) throw FormatError("empty ranker file");
  auto cols = str::SplitTabs(line);
  if (cols.size() != 4 || cols[0] != kModelMagic ||
      cols[2].rfind("dim=", 0) != 0 || cols[3].rfind("trained_on=", 0) != 0) {
    throw FormatError("bad ranker header", 1);
  }
  if (str::ParseInt<int>(cols[1], 1) != kModelVersion) {
    throw FormatError("unsupported ranker version", 1);
  }
  size_t dim = str::ParseInt<size_t>(cols[2].substr(4), 1);
  std::string trained_on(cols[3].substr(11));
  std::vector<double> weights;
  size_t lineno = 1;
  while (str::GetLine(in, &line)) {
    ++lineno;
    if (str::Trim(line).empty()) continue;
    double w = str::ParseDouble(line, lineno);
    if (!std::isfinite(w)) throw FormatError("non-finite weight", lineno);
    weights.push_back(w);
  }
  if (weights.size() != dim || dim == 0) {
    throw FormatError("expected " + std::to_string(dim) + " weights, got " +
                      std::to_string(weights.size()));
  }
  return TrainedRanker(std::move(weights), std::move(trained_on));
}

TrainedRanker TrainedRanker::LoadFromFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return Load(in);
}

double PairwiseObjective(const std::vector<RankingQuery> &queries,
                         std::span<const double> weights, double c_tradeoff) {
  size_t dim = 0;
  auto diffs = PairDifferences(queries, &dim);
  if (!diffs.empty() && dim != weights.size()) {
    throw ConfigError("weight dimension does not match features");
  }
  return Objective(diffs, weights, c_tradeoff);
}

std::string FingerprintQueries(const std::vector<RankingQuery> &queries) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_bytes = [&](const void *data, size_t n) {
    const auto *p = static_cast<const unsigned char *>(data);
    for (size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  auto mix_string = [&](const std::string &s) {
    mix_bytes(s.data(), s.size());
    mix_bytes("\0", 1);
  };
  for (const RankingQuery &q : queries) {
    mix_string(q.id);
    for (const std::string &c : q.candidates) mix_string(c);
    for (const auto &f : q.features) {
      for (double v : f) {
        uint64_t bits = std::bit_cast<uint64_t>(v);
        mix_bytes(&bits, sizeof(bits));
      }
    }
    uint64_t gold = q.gold;
    mix_bytes(&gold, sizeof(gold));
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TrainedRanker TrainPairwise(const std::vector<RankingQuery> &queries,
                            const TrainOptions &options, TrainStats *stats) {
  if (!(options.c_tradeoff > 0.0) || !std::isfinite(options.c_tradeoff)) {
    throw ConfigError("trade-off must be positive");
  }
  if (options.epochs < 0) throw ConfigError("epochs must be >= 0");
  if (!(options.learning_rate > 0.0)) {
    throw ConfigError("learning rate must be positive");
  }
  if (options.batch_size < 0) throw ConfigError("batch size must be >= 0");

  size_t dim = 0;
  const auto diffs = PairDifferences(queries, &dim);
  if (diffs.empty()) throw InsufficientDataError("no usable training pairs");

  const double c = options.c_tradeoff;
  const size_t num_pairs = diffs.size();
  const size_t batch = options.batch_size == 0
                           ? num_pairs
                           : std::min<size_t>(options.batch_size, num_pairs);

  std::mt19937_64 rng(options.seed);
  std::vector<size_t> order(num_pairs);
  for (size_t i = 0; i < num_pairs; ++i) order[i] = i;

  std::vector<double> w(dim, 0.0);
  double loss = Objective(diffs, w, c);
  std::vector<double> history{loss};

  std::vector<double> candidate(dim), grad(dim);
  for (int t = 1; t <= options.epochs; ++t) {
    Shuffle(&order, &rng);
    double eta = options.learning_rate / std::sqrt(static_cast<double>(t));
    for (int attempt = 0; attempt <= kMaxBacktracks; ++attempt) {
      candidate = w;
      for (size_t start = 0; start < num_pairs; start += batch) {
        size_t end = std::min(num_pairs, start + batch);
        double share = static_cast<double>(end - start) / num_pairs;
        for (size_t j = 0; j < dim; ++j) grad[j] = share * candidate[j];
        for (size_t i = start; i < end; ++i) {
          const auto &d = diffs[order[i]];
          if (1.0 - Dot(candidate, d) > 0.0) {
            for (size_t j = 0; j < dim; ++j) grad[j] -= c * d[j];
          }
        }
        for (size_t j = 0; j < dim; ++j) candidate[j] -= eta * grad[j];
      }
      double candidate_loss = Objective(diffs, candidate, c);
      if (candidate_loss <= loss) {
        w = candidate;
        loss = candidate_loss;
        break;
      }
      eta *= 0.5;
    }
    history.push_back(loss);
  }

  if (stats != nullptr) {
    stats->queries = queries.size();
    stats->pairs = num_pairs;
    stats->swapped_pairs = 0;
    for (const auto &d : diffs) {
      if (Dot(w, d) <= 0.0) ++stats->swapped_pairs;
    }
    stats->loss_history = std::move(history);
  }
  return TrainedRanker(std::move(w), FingerprintQueries(queries));
}

}  // namespace emn
