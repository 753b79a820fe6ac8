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

// Loaders for the on-disk inputs of the linker:
//
//   tweets.jsonl    {"id", "text", "timestamp"?, "gold_entity"?, "gold_label"?}
//   triples.tsv     subject, predicate, object, is_literal ("0"/"1")
//   labels.tsv      entity_id, label, comment, entity_type
//   pageviews.tsv   entity_id, ISO date, views
//   phrases.txt     one anchor text or page title per line
//   stopwords.txt   one lowercase token per line
//
// Every loader has a stream-based Read* variant and a matching Write* so that
// loaded data can be serialized back into the same format.

#ifndef EMN_CORPUS_H_
#define EMN_CORPUS_H_

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace emn {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

// ISO-8601 calendar date, YYYY-MM-DD. Throws FormatError.
Date ParseDate(std::string_view text);
std::string FormatDate(Date date);

// RFC 3339 timestamp, e.g. 2014-07-31T10:15:00Z or 2014-07-31T12:15:00+02:00.
// Fractional seconds are accepted and truncated. Throws FormatError.
Timestamp ParseTimestamp(std::string_view text);
// Always renders in UTC with a trailing 'Z'.
std::string FormatTimestamp(Timestamp ts);

enum class GoldLabel { kExplicit, kImplicit, kNil };

std::string_view GoldLabelName(GoldLabel label);
std::optional<GoldLabel> ParseGoldLabel(std::string_view name);

struct Tweet {
  std::string id;
  std::string text;
  std::optional<Timestamp> timestamp;
  std::optional<std::string> gold_entity;
  std::optional<GoldLabel> gold_label;

  bool operator==(const Tweet &) const = default;
};

struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;
  bool object_is_literal = false;

  bool operator==(const Triple &) const = default;
};

struct EntityRecord {
  std::string entity_id;
  std::string label;
  std::string comment;
  std::string entity_type;

  bool operator==(const EntityRecord &) const = default;
};

struct PageViewRecord {
  std::string entity_id;
  Date date;
  int64_t views = 0;

  bool operator==(const PageViewRecord &) const = default;
};

// Set of known phrases (Wikipedia anchor texts and page titles). Phrases are
// stored lowercased with white space collapsed; queries are normalized the
// same way before lookup.
class PhraseDictionary {
 public:
  PhraseDictionary() = default;

  // Adds a phrase; returns false if its normalized form was already present.
  bool Add(std::string_view phrase);

  bool Contains(std::string_view query) const;

  // Lookup by a space-joined sequence of cleaned tweet tokens. Phrases that
  // carry punctuation ("spider-man") are indexed under their cleaned token
  // form ("spider man") as well, so they can match cleaned text.
  bool ContainsTokens(std::string_view joined_tokens) const;

  size_t size() const { return phrases_.size(); }
  bool empty() const { return phrases_.empty(); }
  const std::set<std::string> &phrases() const { return phrases_; }

 private:
  std::set<std::string> phrases_;
  std::unordered_set<std::string> token_forms_;
};

using StopwordSet = std::unordered_set<std::string>;

// Stream variants take the stream by reference; path variants throw IoError
// when the file cannot be opened.
std::vector<Tweet> ReadTweets(std::istream &in);
std::vector<Tweet> LoadTweets(const std::string &path);
void WriteTweets(std::ostream &out, const std::vector<Tweet> &tweets);

std::vector<Triple> ReadTriples(std::istream &in);
std::vector<Triple> LoadTriples(const std::string &path);
void WriteTriples(std::ostream &out, const std::vector<Triple> &triples);

std::vector<EntityRecord> ReadEntityRecords(std::istream &in);
std::vector<EntityRecord> LoadEntityRecords(const std::string &path);
void WriteEntityRecords(std::ostream &out,
                        const std::vector<EntityRecord> &records);

std::vector<PageViewRecord> ReadPageViews(std::istream &in);
std::vector<PageViewRecord> LoadPageViews(const std::string &path);
void WritePageViews(std::ostream &out,
                    const std::vector<PageViewRecord> &views);

PhraseDictionary ReadPhraseDictionary(std::istream &in);
PhraseDictionary LoadPhraseDictionary(const std::string &path);
void WritePhraseDictionary(std::ostream &out, const PhraseDictionary &dict);

StopwordSet ReadStopwords(std::istream &in);
StopwordSet LoadStopwords(const std::string &path);

// Indexes records by id.
std::map<std::string, EntityRecord> IndexRecords(
    const std::vector<EntityRecord> &records);

}  // namespace emn

#endif  // EMN_CORPUS_H_
