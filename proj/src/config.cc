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

#include "emn/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>

#include "emn/errors.h"
#include "str_util.h"

namespace emn {

namespace {

using Setter = std::function<void(Config &, std::string_view)>;

int ParseIntIn(std::string_view key, std::string_view value, int lo, int hi) {
  int v;
  try {
    v = str::ParseInt<int>(value);
  } catch (const FormatError &) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" +
                      std::string(value) + "'");
  }
  if (v < lo || v > hi) {
    throw ConfigError(std::string(key) + ": " + std::to_string(v) +
                      " is outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return v;
}

double ParseDoubleIn(std::string_view key, std::string_view value, double lo,
                     double hi, bool lo_open) {
  double v;
  try {
    v = str::ParseDouble(value);
  } catch (const FormatError &) {
    throw ConfigError(std::string(key) + ": expected a number, got '" +
                      std::string(value) + "'");
  }
  bool below = lo_open ? !(v > lo) : !(v >= lo);
  if (!std::isfinite(v) || below || v > hi) {
    throw ConfigError(std::string(key) + ": " + std::string(value) +
                      " is out of range");
  }
  return v;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(std::string(key) + ": expected true or false");
}

std::vector<std::string> ParseList(std::string_view value) {
  std::vector<std::string> items;
  size_t start = 0;
  while (start <= value.size()) {
    size_t comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    std::string_view item = str::Trim(value.substr(start, comma - start));
    if (!item.empty()) items.emplace_back(item);
    start = comma + 1;
  }
  return items;
}

constexpr int kMaxInt = 1 << 30;

const std::map<std::string, Setter, std::less<>> &Setters() {
  static const auto *setters = new std::map<std::string, Setter, std::less<>>{
      {"entity_type", [](Config &c, std::string_view v) { c.entity_type = v; }},
      {"m_relations",
       [](Config &c, std::string_view v) {
         c.m_relations = ParseIntIn("m_relations", v, 1, kMaxInt);
       }},
      {"context_cap",
       [](Config &c, std::string_view v) {
         c.context_cap = ParseIntIn("context_cap", v, 1, kMaxInt);
       }},
      {"salience_window_days",
       [](Config &c, std::string_view v) {
         c.salience_window_days =
             ParseIntIn("salience_window_days", v, 1, 36500);
       }},
      {"type_keywords",
       [](Config &c, std::string_view v) { c.type_keywords = ParseList(v); }},
      {"as_of_date",
       [](Config &c, std::string_view v) {
         try {
           c.as_of_date = ParseDate(v);
         } catch (const FormatError &e) {
           throw ConfigError(std::string("as_of_date: ") + e.what());
         }
       }},
      {"no_context",
       [](Config &c, std::string_view v) {
         c.no_context = ParseBool("no_context", v);
       }},
      {"k",
       [](Config &c, std::string_view v) { c.k = ParseIntIn("k", v, 1, kMaxInt); }},
      {"top",
       [](Config &c, std::string_view v) {
         c.top = ParseIntIn("top", v, 1, kMaxInt);
       }},
      {"tweet_weighting",
       [](Config &c, std::string_view v) {
         if (v == "binary") {
           c.tweet_weighting = TweetWeighting::kBinary;
         } else if (v == "tf") {
           c.tweet_weighting = TweetWeighting::kTermFrequency;
         } else {
           throw ConfigError("tweet_weighting: expected binary or tf");
         }
       }},
      {"c_tradeoff",
       [](Config &c, std::string_view v) {
         c.c_tradeoff = ParseDoubleIn("c_tradeoff", v, 0.0, 1e12, true);
       }},
      {"epochs",
       [](Config &c, std::string_view v) {
         c.epochs = ParseIntIn("epochs", v, 0, 1000000);
       }},
      {"learning_rate",
       [](Config &c, std::string_view v) {
         c.learning_rate = ParseDoubleIn("learning_rate", v, 0.0, 1e6, true);
       }},
      {"batch_size",
       [](Config &c, std::string_view v) {
         c.batch_size = ParseIntIn("batch_size", v, 0, kMaxInt);
       }},
      {"seed",
       [](Config &c, std::string_view v) {
         try {
           c.seed = str::ParseInt<uint64_t>(v);
         } catch (const FormatError &) {
           throw ConfigError("seed: expected a non-negative integer");
         }
       }},
      {"folds",
       [](Config &c, std::string_view v) {
         c.folds = ParseIntIn("folds", v, 2, 1000);
       }},
      {"test_fraction",
       [](Config &c, std::string_view v) {
         c.test_fraction = ParseDoubleIn("test_fraction", v, 0.0, 1.0, false);
       }},
      {"explicit_ratio",
       [](Config &c, std::string_view v) {
         c.explicit_ratio = ParseDoubleIn("explicit_ratio", v, 0.0, 1e6, false);
       }},
      {"nil_fraction",
       [](Config &c, std::string_view v) {
         c.nil_fraction = ParseDoubleIn("nil_fraction", v, 0.0, 1e6, false);
       }},
      {"threads",
       [](Config &c, std::string_view v) {
         c.threads = ParseIntIn("threads", v, 1, 1024);
       }},
      {"triples", [](Config &c, std::string_view v) { c.triples = v; }},
      {"labels", [](Config &c, std::string_view v) { c.labels = v; }},
      {"tweets", [](Config &c, std::string_view v) { c.tweets = v; }},
      {"pageviews", [](Config &c, std::string_view v) { c.pageviews = v; }},
      {"phrases", [](Config &c, std::string_view v) { c.phrases = v; }},
      {"stopwords", [](Config &c, std::string_view v) { c.stopwords = v; }},
      {"emn", [](Config &c, std::string_view v) { c.emn = v; }},
      {"ranker", [](Config &c, std::string_view v) { c.ranker = v; }},
      {"gold", [](Config &c, std::string_view v) { c.gold = v; }},
      {"stub", [](Config &c, std::string_view v) { c.stub = v; }},
      {"out", [](Config &c, std::string_view v) { c.out = v; }},
      {"report", [](Config &c, std::string_view v) { c.report = v; }},
      {"dump", [](Config &c, std::string_view v) { c.dump = v; }},
  };
  return *setters;
}

}  // namespace

void Config::Set(std::string_view key, std::string_view value) {
  auto it = Setters().find(key);
  if (it == Setters().end()) {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
  it->second(*this, str::Trim(value));
}

void Config::Apply(std::istream &in) {
  std::string line;
  size_t lineno = 0;
  while (str::GetLine(in, &line)) {
    ++lineno;
    std::string_view text = line;
    size_t hash = text.find('#');
    if (hash != std::string_view::npos) text = text.substr(0, hash);
    text = str::Trim(text);
    if (text.empty()) continue;
    size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    try {
      Set(str::Trim(text.substr(0, eq)), text.substr(eq + 1));
    } catch (const ConfigError &e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
}

void Config::ApplyFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  Apply(in);
}

const std::vector<std::string> &Config::Keys() {
  static const auto *keys = [] {
    auto *v = new std::vector<std::string>;
    for (const auto &[key, setter] : Setters()) v->push_back(key);
    return v;
  }();
  return *keys;
}

BuildOptions Config::ToBuildOptions() const {
  BuildOptions b;
  b.entity_type = entity_type;
  b.m_relations = m_relations;
  b.context_cap = context_cap;
  b.salience_window_days = salience_window_days;
  b.type_keywords = type_keywords;
  if (!as_of_date) throw ConfigError("--as-of is required");
  b.as_of = *as_of_date;
  b.include_context = !no_context;
  b.threads = threads;
  return b;
}

LinkOptions Config::ToLinkOptions() const {
  LinkOptions l;
  l.k = k;
  l.weighting = tweet_weighting;
  return l;
}

TrainOptions Config::ToTrainOptions() const {
  TrainOptions t;
  t.c_tradeoff = c_tradeoff;
  t.epochs = epochs;
  t.learning_rate = learning_rate;
  t.seed = seed;
  t.batch_size = batch_size;
  return t;
}

CrossValidationOptions Config::ToCrossValidationOptions() const {
  CrossValidationOptions cv;
  cv.folds = folds;
  cv.seed = seed;
  cv.train = ToTrainOptions();
  cv.threads = threads;
  return cv;
}

MixOptions Config::ToMixOptions() const {
  MixOptions m;
  m.test_fraction = test_fraction;
  m.explicit_per_implicit = explicit_ratio;
  m.nil_fraction = nil_fraction;
  m.seed = seed;
  return m;
}

}  // namespace emn
