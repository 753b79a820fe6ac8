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

#include "emn/corpus.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "emn/errors.h"
#include "emn/textprep.h"
#include "str_util.h"
#include "unicode_util.h"

namespace emn {

namespace {

using json = nlohmann::json;

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

// Parses exactly `width` decimal digits.
int ParseFixed(std::string_view text, size_t pos, size_t width,
               std::string_view what) {
  if (pos + width > text.size()) {
    throw FormatError("truncated " + std::string(what));
  }
  int value = 0;
  for (size_t i = pos; i < pos + width; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') {
      throw FormatError("bad " + std::string(what) + " '" + std::string(text) +
                        "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

void Expect(std::string_view text, size_t pos, std::string_view chars,
            std::string_view what) {
  if (pos >= text.size() || chars.find(text[pos]) == std::string_view::npos) {
    throw FormatError("bad " + std::string(what) + " '" + std::string(text) +
                      "'");
  }
}

template <typename Fn>
auto AtLine(size_t line, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const FormatError &e) {
    if (e.line() != 0) throw;
    throw FormatError(e.what(), line);
  }
}

}  // namespace

Date ParseDate(std::string_view text) {
  text = str::Trim(text);
  if (text.size() != 10) {
    throw FormatError("bad date '" + std::string(text) + "'");
  }
  int y = ParseFixed(text, 0, 4, "date");
  Expect(text, 4, "-", "date");
  int m = ParseFixed(text, 5, 2, "date");
  Expect(text, 7, "-", "date");
  int d = ParseFixed(text, 8, 2, "date");
  std::chrono::year_month_day ymd{std::chrono::year(y),
                                  std::chrono::month(static_cast<unsigned>(m)),
                                  std::chrono::day(static_cast<unsigned>(d))};
  if (!ymd.ok()) throw FormatError("invalid date '" + std::string(text) + "'");
  return Date(ymd);
}

std::string FormatDate(Date date) {
  std::chrono::year_month_day ymd(date);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

Timestamp ParseTimestamp(std::string_view text) {
  text = str::Trim(text);
  if (text.size() < 20) {
    throw FormatError("bad timestamp '" + std::string(text) + "'");
  }
  Date date = ParseDate(text.substr(0, 10));
  Expect(text, 10, "Tt ", "timestamp");
  int hh = ParseFixed(text, 11, 2, "timestamp");
  Expect(text, 13, ":", "timestamp");
  int mm = ParseFixed(text, 14, 2, "timestamp");
  Expect(text, 16, ":", "timestamp");
  int ss = ParseFixed(text, 17, 2, "timestamp");
  // Leap seconds (ss == 60) are folded into the next minute.
  if (hh > 23 || mm > 59 || ss > 60) {
    throw FormatError("invalid time in '" + std::string(text) + "'");
  }
  size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) {
      throw FormatError("bad fractional seconds in '" + std::string(text) +
                        "'");
    }
  }
  int offset_minutes = 0;
  if (pos < text.size() && (text[pos] == 'Z' || text[pos] == 'z')) {
    ++pos;
  } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    int sign = text[pos] == '-' ? -1 : 1;
    int oh = ParseFixed(text, pos + 1, 2, "timestamp offset");
    Expect(text, pos + 3, ":", "timestamp offset");
    int om = ParseFixed(text, pos + 4, 2, "timestamp offset");
    if (oh > 23 || om > 59) {
      throw FormatError("invalid offset in '" + std::string(text) + "'");
    }
    offset_minutes = sign * (oh * 60 + om);
    pos += 6;
  } else {
    throw FormatError("missing UTC offset in '" + std::string(text) + "'");
  }
  if (pos != text.size()) {
    throw FormatError("trailing characters in '" + std::string(text) + "'");
  }
  using namespace std::chrono;
  return Timestamp(date) + hours(hh) + minutes(mm) + seconds(ss) -
         minutes(offset_minutes);
}

std::string FormatTimestamp(Timestamp ts) {
  using namespace std::chrono;
  Date day = floor<days>(ts);
  auto rest = ts - day;
  auto h = duration_cast<hours>(rest);
  auto m = duration_cast<minutes>(rest - h);
  auto s = rest - h - m;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02dZ", FormatDate(day).c_str(),
                static_cast<int>(h.count()), static_cast<int>(m.count()),
                static_cast<int>(s.count()));
  return buf;
}

std::string_view GoldLabelName(GoldLabel label) {
  switch (label) {
    case GoldLabel::kExplicit:
      return "explicit";
    case GoldLabel::kImplicit:
      return "implicit";
    case GoldLabel::kNil:
      return "nil";
  }
  return "";
}

std::optional<GoldLabel> ParseGoldLabel(std::string_view name) {
  if (name == "explicit") return GoldLabel::kExplicit;
  if (name == "implicit") return GoldLabel::kImplicit;
  if (name == "nil") return GoldLabel::kNil;
  return std::nullopt;
}

// ----------------------------------------------------------------------------
// PhraseDictionary

bool PhraseDictionary::Add(std::string_view phrase) {
  std::string normalized = unicode::NormalizeSpaceAndCase(phrase);
  if (normalized.empty()) return false;
  CleanText cleaned = Clean(normalized);
  if (!cleaned.tokens.empty()) token_forms_.insert(cleaned.Joined());
  return phrases_.insert(std::move(normalized)).second;
}

bool PhraseDictionary::Contains(std::string_view query) const {
  return phrases_.count(unicode::NormalizeSpaceAndCase(query)) > 0;
}

bool PhraseDictionary::ContainsTokens(std::string_view joined_tokens) const {
  return token_forms_.count(std::string(joined_tokens)) > 0;
}

// ----------------------------------------------------------------------------
// Tweets

std::vector<Tweet> ReadTweets(std::istream &in) {
  std::vector<Tweet> tweets;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t lineno = 0;
  while (str::GetLine(in, &line)) {
    ++lineno;
    if (str::Trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception &e) {
      throw FormatError(std::string("malformed JSON: ") + e.what(), lineno);
    }
    if (!record.is_object()) throw FormatError("expected an object", lineno);

    auto required_string = [&](const char *key) {
      auto it = record.find(key);
      if (it == record.end() || !it->is_string()) {
        throw FormatError(std::string("missing string field '") + key + "'",
                          lineno);
      }
      return it->get<std::string>();
    };
    auto optional_string =
        [&](const char *key) -> std::optional<std::string> {
      auto it = record.find(key);
      if (it == record.end() || it->is_null()) return std::nullopt;
      if (!it->is_string()) {
        throw FormatError(std::string("field '") + key + "' must be a string",
                          lineno);
      }
      return it->get<std::string>();
    };

    Tweet tweet;
    tweet.id = required_string("id");
    tweet.text = required_string("text");
    if (tweet.id.empty()) throw FormatError("empty tweet id", lineno);
    if (tweet.text.empty()) throw FormatError("empty tweet text", lineno);
    if (auto ts = optional_string("timestamp")) {
      tweet.timestamp = AtLine(lineno, [&] { return ParseTimestamp(*ts); });
    }
    tweet.gold_entity = optional_string("gold_entity");
    if (tweet.gold_entity && tweet.gold_entity->empty()) {
      tweet.gold_entity.reset();
    }
    if (auto label = optional_string("gold_label")) {
      tweet.gold_label = ParseGoldLabel(*label);
      if (!tweet.gold_label) {
        throw FormatError("unknown gold_label '" + *label + "'", lineno);
      }
    }
    if (!seen.insert(tweet.id).second) {
      throw DuplicateIdError(tweet.id, lineno);
    }
    tweets.push_back(std::move(tweet));
  }
  return tweets;
}

std::vector<Tweet> LoadTweets(const std::string &path) {
  auto in = OpenInput(path);
  return ReadTweets(in);
}

void WriteTweets(std::ostream &out, const std::vector<Tweet> &tweets) {
  for (const Tweet &tweet : tweets) {
    nlohmann::ordered_json record;
    record["id"] = tweet.id;
    record["text"] = tweet.text;
    if (tweet.timestamp) record["timestamp"] = FormatTimestamp(*tweet.timestamp);
    if (tweet.gold_entity) record["gold_entity"] = *tweet.gold_entity;
    if (tweet.gold_label) {
      record["gold_label"] = std::string(GoldLabelName(*tweet.gold_label));
    }
    out << record.dump() << '\n';
  }
}

// ----------------------------------------------------------------------------
// Triples

std::vector<Triple> ReadTriples(std::istream &in) {
  std::vector<Triple> triples;
  std::string line;
  size_t lineno = 0;
  while (str::GetLine(in, &line)) {
    ++lineno;
    if (str::Trim(line).empty()) continue;
    auto cols = str::SplitTabs(line);
    if (cols.size() != 4) {
      throw FormatError("expected 4 columns, got " + std::to_string(cols.size()),
                        lineno);
    }
    Triple t;
    t.subject = std::string(str::Trim(cols[0]));
    t.predicate = std::string(str::Trim(cols[1]));
    t.object = std::string(str::Trim(cols[2]));
    std::string_view flag = str::Trim(cols[3]);
    if (flag == "1") {
      t.object_is_literal = true;
    } else if (flag != "0") {
      throw FormatError("literal flag must be 0 or 1", lineno);
    }
    if (t.subject.empty() || t.predicate.empty() || t.object.empty()) {
      throw FormatError("empty triple component", lineno);
    }
    triples.push_back(std::move(t));
  }
  return triples;
}

std::vector<Triple> LoadTriples(const std::string &path) {
  auto in = OpenInput(path);
  return ReadTriples(in);
}

void WriteTriples(std::ostream &out, const std::vector<Triple> &triples) {
  for (const Triple &t : triples) {
    out << t.subject << '\t' << t.predicate << '\t' << t.object << '\t'
        << (t.object_is_literal ? '1' : '0') << '\n';
  }
}

// ----------------------------------------------------------------------------
// Entity records

std::vector<EntityRecord> ReadEntityRecords(std::istream &in) {
  std::vector<EntityRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t lineno = 0;
  while (str::GetLine(in, &line)) {
    ++lineno;
    if (str::Trim(line).empty()) continue;
    auto cols = str::SplitTabs(line);
    if (cols.size() != 4) {
      throw FormatError("expected 4 columns, got " + std::to_string(cols.size()),
                        lineno);
    }
    EntityRecord r;
    r.entity_id = std::string(str::Trim(cols[0]));
    r.label = std::string(str::Trim(cols[1]));
    r.comment = std::string(str::Trim(cols[2]));
    r.entity_type = std::string(str::Trim(cols[3]));
    if (r.entity_id.empty()) throw FormatError("empty entity id", lineno);
    if (r.label.empty()) throw FormatError("empty label", lineno);
    if (!seen.insert(r.entity_id).second) {
      throw DuplicateIdError(r.entity_id, lineno);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<EntityRecord> LoadEntityRecords(const std::string &path) {
  auto in = OpenInput(path);
  return ReadEntityRecords(in);
}

void WriteEntityRecords(std::ostream &out,
                        const std::vector<EntityRecord> &records) {
  for (const EntityRecord &r : records) {
    out << r.entity_id << '\t' << r.label << '\t' << r.comment << '\t'
        << r.entity_type << '\n';
  }
}

// ----------------------------------------------------------------------------
// Page views

std::vector<PageViewRecord> ReadPageViews(std::istream &in) {
  std::vector<PageViewRecord> views;
  std::set<std::pair<std::string, Date>> seen;
  std::string line;
  size_t lineno = 0;
  while (str::GetLine(in, &line)) {
    ++lineno;
    if (str::Trim(line).empty()) continue;
    auto cols = str::SplitTabs(line);
    if (cols.size() != 3) {
      throw FormatError("expected 3 columns, got " + std::to_string(cols.size()),
                        lineno);
    }
    PageViewRecord r;
    r.entity_id = std::string(str::Trim(cols[0]));
    if (r.entity_id.empty()) throw FormatError("empty entity id", lineno);
    r.date = AtLine(lineno, [&] { return ParseDate(cols[1]); });
    std::string_view count = str::Trim(cols[2]);
    auto [end, ec] =
        std::from_chars(count.data(), count.data() + count.size(), r.views);
    if (ec != std::errc() || end != count.data() + count.size()) {
      throw FormatError("bad view count '" + std::string(count) + "'", lineno);
    }
    if (r.views < 0) {
      throw NegativeCountError("negative view count " + std::to_string(r.views),
                               lineno);
    }
    if (!seen.emplace(r.entity_id, r.date).second) {
      throw DuplicateIdError(r.entity_id + "@" + FormatDate(r.date), lineno);
    }
    views.push_back(std::move(r));
  }
  return views;
}

std::vector<PageViewRecord> LoadPageViews(const std::string &path) {
  auto in = OpenInput(path);
  return ReadPageViews(in);
}

void WritePageViews(std::ostream &out,
                    const std::vector<PageViewRecord> &views) {
  for (const PageViewRecord &r : views) {
    out << r.entity_id << '\t' << FormatDate(r.date) << '\t' << r.views << '\n';
  }
}

// ----------------------------------------------------------------------------
// Phrases and stop words

PhraseDictionary ReadPhraseDictionary(std::istream &in) {
  PhraseDictionary dict;
  std::string line;
  while (str::GetLine(in, &line)) dict.Add(line);
  return dict;
}

PhraseDictionary LoadPhraseDictionary(const std::string &path) {
  auto in = OpenInput(path);
  return ReadPhraseDictionary(in);
}

void WritePhraseDictionary(std::ostream &out, const PhraseDictionary &dict) {
  for (const std::string &phrase : dict.phrases()) out << phrase << '\n';
}

StopwordSet ReadStopwords(std::istream &in) {
  StopwordSet stopwords;
  std::string line;
  while (str::GetLine(in, &line)) {
    std::string word = unicode::NormalizeSpaceAndCase(line);
    if (!word.empty()) stopwords.insert(std::move(word));
  }
  return stopwords;
}

StopwordSet LoadStopwords(const std::string &path) {
  auto in = OpenInput(path);
  return ReadStopwords(in);
}

std::map<std::string, EntityRecord> IndexRecords(
    const std::vector<EntityRecord> &records) {
  std::map<std::string, EntityRecord> index;
  for (const EntityRecord &r : records) index.emplace(r.entity_id, r);
  return index;
}

}  // namespace emn
