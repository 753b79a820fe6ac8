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

// Thin helpers over ICU for the handful of codepoint operations the text
// pipeline needs. Internal to the library.

#ifndef EMN_SRC_UNICODE_UTIL_H_
#define EMN_SRC_UNICODE_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

#include <unicode/umachine.h>

namespace emn::unicode {

enum class CharClass {
  kLetter,      // alphabetic codepoints and combining marks
  kDigit,       // decimal digits
  kSpace,       // any white space
  kApostrophe,  // ' and U+2019, dropped without splitting the word
  kOther,       // punctuation, symbols, emoji, invalid bytes
};

CharClass Classify(UChar32 c);

// Decodes UTF-8. Malformed sequences decode to U+FFFD.
std::vector<UChar32> Decode(std::string_view text);

void Append(std::string *out, UChar32 c);

bool IsLower(UChar32 c);
bool IsUpper(UChar32 c);
UChar32 ToLower(UChar32 c);

std::string ToLower(std::string_view text);

// Lowercases, trims and collapses every run of white space to one ASCII
// space.
std::string NormalizeSpaceAndCase(std::string_view text);

}  // namespace emn::unicode

#endif  // EMN_SRC_UNICODE_UTIL_H_
