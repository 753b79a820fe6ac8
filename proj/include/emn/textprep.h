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

// Tweet cleaning and clue extraction.

#ifndef EMN_TEXTPREP_H_
#define EMN_TEXTPREP_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emn/corpus.h"

namespace emn {

// Token that replaces every number in cleaned text.
inline constexpr std::string_view kNumberToken = "number";

// Longest and shortest phrase lengths (in tokens) looked up in the phrase
// dictionary.
inline constexpr int kMaxPhraseTokens = 4;
inline constexpr int kMinPhraseTokens = 2;

struct CleanText {
  // Lowercase tokens with no punctuation; numbers are kNumberToken.
  std::vector<std::string> tokens;

  std::string Joined() const;
  bool operator==(const CleanText &) const = default;
};

// Cleans raw tweet text:
//  - URLs (http://, https://, www.) are dropped,
//  - hashtags and mentions are split with DecomposeTag,
//  - numbers, including "1,000", "3.5" and "$1", become "number",
//  - apostrophes are deleted ("doesn't" -> "doesnt"),
//  - all other punctuation, symbols and emoji act as token separators,
//  - everything is lowercased.
CleanText Clean(std::string_view text);

// "#MarkWahlberg" -> {"mark", "wahlberg"}; "@ISRO" -> {"isro"}. The body is
// split at lowercase-to-uppercase boundaries and lowercased. The returned
// pieces are not otherwise cleaned. Throws EmptyTagError for "#" or "@" and
// std::invalid_argument if `tag` does not start with either.
std::vector<std::string> DecomposeTag(std::string_view tag);

// Multisets of clue strings with occurrence counts.
struct ClueSet {
  std::map<std::string, int> phrases;
  std::map<std::string, int> unigrams;

  bool empty() const { return phrases.empty() && unigrams.empty(); }
  // Distinct clue names, phrases first.
  std::vector<std::string> Names() const;
  bool operator==(const ClueSet &) const = default;
};

enum class ClueMode {
  // Tokens inside a matched phrase are not emitted as unigrams.
  kTweet,
  // Component tokens of matched phrases are emitted as unigrams too, so an
  // entity model containing "sandra bullock" also contains "sandra".
  kEntityModel,
};

// Greedy left-to-right matching of 4-, 3- then 2-grams against `dict`;
// matched spans do not overlap. Remaining tokens that are not stop words
// become unigrams.
ClueSet ExtractClues(const CleanText &clean, const PhraseDictionary &dict,
                     const StopwordSet &stopwords,
                     ClueMode mode = ClueMode::kTweet);

// Clean followed by ExtractClues.
ClueSet TextClues(std::string_view text, const PhraseDictionary &dict,
                  const StopwordSet &stopwords,
                  ClueMode mode = ClueMode::kTweet);

}  // namespace emn

#endif  // EMN_TEXTPREP_H_
