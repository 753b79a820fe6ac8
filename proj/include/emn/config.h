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

// Run configuration. A config file is flat "key = value" text, one setting per
// line, '#' starts a comment. Keys mirror the command line flags with '-'
// replaced by '_' (--m-relations <-> m_relations). Flags given on the command
// line override the file.

#ifndef EMN_CONFIG_H_
#define EMN_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emn/corpus.h"
#include "emn/eval.h"
#include "emn/linker.h"
#include "emn/pipeline.h"
#include "emn/ranker.h"

namespace emn {

struct Config {
  // Knowledge acquisition.
  std::string entity_type;
  int m_relations = kDefaultTopRelations;
  int context_cap = kDefaultContextCap;
  int salience_window_days = kDefaultSalienceWindowDays;
  std::vector<std::string> type_keywords;
  std::optional<Date> as_of_date;
  bool no_context = false;

  // Linking and training.
  int k = kDefaultCandidates;
  int top = 5;
  TweetWeighting tweet_weighting = TweetWeighting::kBinary;
  double c_tradeoff = 0.01;
  int epochs = 200;
  double learning_rate = 0.1;
  int batch_size = 64;
  uint64_t seed = 7;

  // Evaluation.
  int folds = kDefaultFolds;
  double test_fraction = 0.4;
  double explicit_ratio = 4.0;
  double nil_fraction = 0.25;

  int threads = 1;

  // Files.
  std::string triples, labels, tweets, pageviews, phrases, stopwords;
  std::string emn, ranker, gold, stub, out, report, dump;

  // Sets one key from its textual value. Throws ConfigError for unknown keys
  // and out-of-range values.
  void Set(std::string_view key, std::string_view value);

  // Applies every "key = value" line. Throws ConfigError with the line number.
  void Apply(std::istream &in);
  void ApplyFile(const std::string &path);

  static const std::vector<std::string> &Keys();

  BuildOptions ToBuildOptions() const;
  LinkOptions ToLinkOptions() const;
  TrainOptions ToTrainOptions() const;
  CrossValidationOptions ToCrossValidationOptions() const;
  MixOptions ToMixOptions() const;
};

}  // namespace emn

#endif  // EMN_CONFIG_H_
