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

#include "emn/textprep.h"

#include <algorithm>
#include <stdexcept>

#include "emn/errors.h"
#include "unicode_util.h"

namespace emn {

namespace {

using unicode::CharClass;

bool IsUrl(const std::vector<UChar32> &word) {
  std::string lower;
  for (UChar32 c : word) unicode::Append(&lower, unicode::ToLower(c));
  return lower.rfind("http://", 0) == 0 || lower.rfind("https://", 0) == 0 ||
         lower.rfind("www.", 0) == 0 ||
         lower.find("://") != std::string::npos;
}

bool HasWordChar(const std::vector<UChar32> &word, size_t from) {
  for (size_t i = from; i < word.size(); ++i) {
    CharClass cls = unicode::Classify(word[i]);
    if (cls == CharClass::kLetter || cls == CharClass::kDigit) return true;
  }
  return false;
}

// Splits one white-space free piece into clean tokens.
void CleanPiece(const std::vector<UChar32> &piece,
                std::vector<std::string> *tokens) {
  std::string word;
  auto flush = [&] {
    if (!word.empty()) tokens->push_back(std::move(word));
    word.clear();
  };
  size_t i = 0;
  while (i < piece.size()) {
    CharClass cls = unicode::Classify(piece[i]);
    if (cls == CharClass::kLetter) {
      unicode::Append(&word, unicode::ToLower(piece[i]));
      ++i;
    } else if (cls == CharClass::kApostrophe) {
      ++i;
    } else if (cls == CharClass::kDigit) {
      // A number run: digits, with '.' or ',' allowed between digits.
      flush();
      ++i;
      while (i < piece.size()) {
        if (unicode::Classify(piece[i]) == CharClass::kDigit) {
          ++i;
        } else if ((piece[i] == '.' || piece[i] == ',') &&
                   i + 1 < piece.size() &&
                   unicode::Classify(piece[i + 1]) == CharClass::kDigit) {
          i += 2;
        } else {
          break;
        }
      }
      tokens->emplace_back(kNumberToken);
    } else {
      flush();
      ++i;
    }
  }
  flush();
}

}  // namespace

std::string CleanText::Joined() const {
  std::string out;
  for (const std::string &t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<std::string> DecomposeTag(std::string_view tag) {
  if (tag.empty() || (tag[0] != '#' && tag[0] != '@')) {
    throw std::invalid_argument("tag must start with '#' or '@'");
  }
  std::vector<UChar32> body = unicode::Decode(tag.substr(1));
  if (body.empty()) throw EmptyTagError(std::string(tag));

  std::vector<std::string> pieces(1);
  for (size_t i = 0; i < body.size(); ++i) {
    if (i > 0 && unicode::IsLower(body[i - 1]) && unicode::IsUpper(body[i])) {
      pieces.emplace_back();
    }
    unicode::Append(&pieces.back(), unicode::ToLower(body[i]));
  }
  return pieces;
}

CleanText Clean(std::string_view text) {
  CleanText result;
  std::vector<UChar32> chars = unicode::Decode(text);
  size_t i = 0;
  while (i < chars.size()) {
    if (unicode::Classify(chars[i]) == CharClass::kSpace) {
      ++i;
      continue;
    }
    size_t end = i;
    while (end < chars.size() &&
           unicode::Classify(chars[end]) != CharClass::kSpace) {
      ++end;
    }
    std::vector<UChar32> word(chars.begin() + i, chars.begin() + end);
    i = end;

    if (IsUrl(word)) continue;
    if ((word[0] == '#' || word[0] == '@') && HasWordChar(word, 1)) {
      std::string raw;
      for (UChar32 c : word) unicode::Append(&raw, c);
      for (const std::string &piece : DecomposeTag(raw)) {
        CleanPiece(unicode::Decode(piece), &result.tokens);
      }
      continue;
    }
    CleanPiece(word, &result.tokens);
  }
  return result;
}

std::vector<std::string> ClueSet::Names() const {
  std::vector<std::string> names;
  names.reserve(phrases.size() + unigrams.size());
  for (const auto &[name, count] : phrases) names.push_back(name);
  for (const auto &[name, count] : unigrams) names.push_back(name);
  return names;
}

ClueSet ExtractClues(const CleanText &clean, const PhraseDictionary &dict,
                     const StopwordSet &stopwords, ClueMode mode) {
  ClueSet clues;
  const auto &tokens = clean.tokens;
  const size_t n = tokens.size();
  std::vector<bool> covered(n, false);

  size_t i = 0;
  while (i < n) {
    size_t matched = 0;
    size_t longest = std::min<size_t>(kMaxPhraseTokens, n - i);
    for (size_t len = longest; len >= kMinPhraseTokens; --len) {
      std::string joined = tokens[i];
      for (size_t j = i + 1; j < i + len; ++j) {
        joined.push_back(' ');
        joined += tokens[j];
      }
      if (dict.ContainsTokens(joined)) {
        ++clues.phrases[joined];
        std::fill(covered.begin() + i, covered.begin() + i + len, true);
        matched = len;
        break;
      }
    }
    i += matched > 0 ? matched : 1;
  }

  for (size_t t = 0; t < n; ++t) {
    if (covered[t] && mode == ClueMode::kTweet) continue;
    if (stopwords.count(tokens[t]) > 0) continue;
    ++clues.unigrams[tokens[t]];
  }
  return clues;
}

ClueSet TextClues(std::string_view text, const PhraseDictionary &dict,
                  const StopwordSet &stopwords, ClueMode mode) {
  return ExtractClues(Clean(text), dict, stopwords, mode);
}

}  // namespace emn
