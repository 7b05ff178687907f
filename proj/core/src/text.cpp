// Copyright (c) 2026 shobdosetu-forge authors
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

#include "shobdosetu/text.hpp"

#include <array>
#include <cstdint>

#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utypes.h>

#include "shobdosetu/errors.hpp"

namespace shobdosetu::text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool is_ascii_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::u32string utf8_decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    const auto b0 = static_cast<unsigned char>(utf8[i]);
    std::size_t need;
    char32_t cp;
    if (b0 < 0x80) {
      need = 0;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      need = 1;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      need = 2;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      need = 3;
      cp = b0 & 0x07;
    } else {
      ++i;
      out.push_back(kReplacement);
      continue;
    }
    ++i;
    bool ok = true;
    for (std::size_t k = 0; k < need; ++k, ++i) {
      if (i >= utf8.size() ||
          (static_cast<unsigned char>(utf8[i]) & 0xC0) != 0x80) {
        ok = false;  // resync at the offending byte
        break;
      }
      cp = (cp << 6) | (static_cast<unsigned char>(utf8[i]) & 0x3F);
    }
    static constexpr char32_t kMinByLen[4] = {0, 0x80, 0x800, 0x10000};
    if (!ok || cp < kMinByLen[need] || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      cp = kReplacement;
    }
    out.push_back(cp);
  }
  return out;
}

std::string utf8_encode(const std::u32string& codepoints) {
  std::string out;
  out.reserve(codepoints.size() * 2);
  for (char32_t cp : codepoints) {
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = kReplacement;
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

std::string nfc(std::string_view utf8) {
  if (utf8.empty()) return {};
  UErrorCode status = U_ZERO_ERROR;
  const UNormalizer2* norm = unorm2_getNFCInstance(&status);
  if (U_FAILURE(status)) {
    raise(Errc::IoFailure, "ICU NFC normalizer unavailable");
  }

  // UTF-8 -> UTF-16.
  std::u16string u16(utf8.size() + 1, u'\0');
  int32_t u16_len = 0;
  status = U_ZERO_ERROR;
  u_strFromUTF8(u16.data(), static_cast<int32_t>(u16.size()), &u16_len,
                utf8.data(), static_cast<int32_t>(utf8.size()), &status);
  if (U_FAILURE(status)) {
    // Re-encode through the lenient decoder, then retry once.
    std::string repaired = utf8_encode(utf8_decode(utf8));
    status = U_ZERO_ERROR;
    u16.assign(repaired.size() + 1, u'\0');
    u_strFromUTF8(u16.data(), static_cast<int32_t>(u16.size()), &u16_len,
                  repaired.data(), static_cast<int32_t>(repaired.size()),
                  &status);
    if (U_FAILURE(status)) raise(Errc::IoFailure, "UTF-8 conversion failed");
  }
  u16.resize(static_cast<std::size_t>(u16_len));

  std::u16string out16(u16.size() * 3 + 16, u'\0');
  status = U_ZERO_ERROR;
  int32_t out_len = unorm2_normalize(norm, u16.data(),
                                     static_cast<int32_t>(u16.size()),
                                     out16.data(),
                                     static_cast<int32_t>(out16.size()), &status);
  if (U_FAILURE(status)) raise(Errc::IoFailure, "NFC normalization failed");
  out16.resize(static_cast<std::size_t>(out_len));

  std::string out(out16.size() * 4 + 1, '\0');
  int32_t out8_len = 0;
  status = U_ZERO_ERROR;
  u_strToUTF8(out.data(), static_cast<int32_t>(out.size()), &out8_len,
              out16.data(), static_cast<int32_t>(out16.size()), &status);
  if (U_FAILURE(status)) raise(Errc::IoFailure, "UTF-8 conversion failed");
  out.resize(static_cast<std::size_t>(out8_len));
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  const std::string normalized = nfc(s);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && is_ascii_ws(normalized[i])) ++i;
    std::size_t start = i;
    while (i < normalized.size() && !is_ascii_ws(normalized[i])) ++i;
    if (i > start) tokens.push_back(normalized.substr(start, i - start));
  }
  return tokens;
}

std::string strip_punct(std::string_view token) {
  std::u32string cps = utf8_decode(token);
  auto is_punct = [](char32_t c) {
    if (c < 0x80) {
      return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
             (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
    }
    return c == 0x0964 || c == 0x0965 ||  // danda, double danda
           c == 0x2018 || c == 0x2019 || c == 0x201C || c == 0x201D ||
           c == 0x2013 || c == 0x2014 || c == 0x2026;
  };
  std::size_t lo = 0, hi = cps.size();
  while (lo < hi && is_punct(cps[lo])) ++lo;
  while (hi > lo && is_punct(cps[hi - 1])) --hi;
  return utf8_encode(cps.substr(lo, hi - lo));
}

ScriptClass classify_token_script(std::string_view token) {
  // Letter-bearing classes indexed for counting. Ties resolve by this
  // priority: drop classes first, then replacement, then keep, Bengali last.
  enum Idx { kArabic, kMalayalam, kTelugu, kOther, kDevanagari, kLatin, kBengali, kCount };
  std::array<int, kCount> counts{};

  for (char32_t c : utf8_decode(token)) {
    if (c >= 0x0980 && c <= 0x09FF) {
      ++counts[kBengali];
    } else if (c >= 0x0900 && c <= 0x097F) {
      ++counts[kDevanagari];
    } else if ((c >= 0x0600 && c <= 0x06FF) || (c >= 0x0750 && c <= 0x077F)) {
      ++counts[kArabic];
    } else if (c >= 0x0D00 && c <= 0x0D7F) {
      ++counts[kMalayalam];
    } else if (c >= 0x0C00 && c <= 0x0C7F) {
      ++counts[kTelugu];
    } else if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) {
      ++counts[kLatin];
    } else if (c < 0x80) {
      // ASCII digits, punctuation, whitespace: neutral, not counted.
    } else {
      ++counts[kOther];
    }
  }

  int best = -1;
  int best_count = 0;
  for (int i = 0; i < kCount; ++i) {
    if (counts[static_cast<std::size_t>(i)] > best_count) {
      best = i;
      best_count = counts[static_cast<std::size_t>(i)];
    }
  }
  if (best < 0) return ScriptClass::Neutral;
  switch (best) {
    case kArabic: return ScriptClass::Arabic;
    case kMalayalam: return ScriptClass::Malayalam;
    case kTelugu: return ScriptClass::Telugu;
    case kOther: return ScriptClass::Other;
    case kDevanagari: return ScriptClass::Devanagari;
    case kLatin: return ScriptClass::Latin;
    default: return ScriptClass::Bengali;
  }
}

}  // namespace shobdosetu::text
