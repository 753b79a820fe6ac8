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

#include "unicode_util.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace emn::unicode {

CharClass Classify(UChar32 c) {
  if (c == '\'' || c == 0x2019) return CharClass::kApostrophe;
  if (u_isUWhiteSpace(c)) return CharClass::kSpace;
  // Emoji are removed even where ICU classifies them as something else
  // (keycap digits, regional indicators and so on).
  if (c > 0x7f && u_hasBinaryProperty(c, UCHAR_EXTENDED_PICTOGRAPHIC)) {
    return CharClass::kOther;
  }
  if (c >= 0x1F1E6 && c <= 0x1F1FF) return CharClass::kOther;
  if (u_isdigit(c)) return CharClass::kDigit;
  if (u_isUAlphabetic(c)) return CharClass::kLetter;
  if ((U_GET_GC_MASK(c) & U_GC_M_MASK) != 0) {
    // Variation selectors and the emoji modifiers are marks too.
    if (c >= 0xFE00 && c <= 0xFE0F) return CharClass::kOther;
    return CharClass::kLetter;
  }
  return CharClass::kOther;
}

std::vector<UChar32> Decode(std::string_view text) {
  std::vector<UChar32> out;
  out.reserve(text.size());
  const auto *s = reinterpret_cast<const uint8_t *>(text.data());
  int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    out.push_back(c < 0 ? 0xFFFD : c);
  }
  return out;
}

void Append(std::string *out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t *>(buf), n, U8_MAX_LENGTH, c, error);
  if (!error) out->append(buf, n);
}

bool IsLower(UChar32 c) { return u_isULowercase(c); }
bool IsUpper(UChar32 c) { return u_isUUppercase(c); }
UChar32 ToLower(UChar32 c) { return u_tolower(c); }

std::string ToLower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (UChar32 c : Decode(text)) Append(&out, u_tolower(c));
  return out;
}

std::string NormalizeSpaceAndCase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (UChar32 c : Decode(text)) {
    if (u_isUWhiteSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    Append(&out, u_tolower(c));
  }
  return out;
}

}  // namespace emn::unicode
