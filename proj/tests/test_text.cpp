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

#include <doctest.h>

#include "shobdosetu/text.hpp"

using namespace shobdosetu;

TEST_CASE("utf8 round trip") {
  const std::string s = "ami \xe0\xa6\x95 ok";  // contains U+0995
  CHECK(text::utf8_encode(text::utf8_decode(s)) == s);
  CHECK(text::utf8_decode("\xff")[0] == 0xFFFD);
}

TEST_CASE("nfc: composed and decomposed graphemes normalize identically") {
  // Bengali RRA: U+09DC is a composition exclusion; NFC keeps the
  // decomposed pair U+09A1 U+09BC for both spellings.
  const std::string composed = "\xe0\xa7\x9c";            // U+09DC
  const std::string decomposed = "\xe0\xa6\xa1\xe0\xa6\xbc";  // U+09A1 U+09BC
  CHECK(text::nfc(composed) == text::nfc(decomposed));
  CHECK(text::nfc(composed) == decomposed);

  // Latin e + combining acute composes to U+00E9.
  CHECK(text::nfc("e\xcc\x81") == "\xc3\xa9");
  // Arabic alef + madda composes to U+0622.
  CHECK(text::nfc("\xd8\xa7\xd9\x93") == "\xd8\xa2");
}

TEST_CASE("tokenize") {
  CHECK(text::tokenize("").empty());
  CHECK(text::tokenize("a  b\tc") == std::vector<std::string>{"a", "b", "c"});
  CHECK(text::tokenize("  lead trail  ") == std::vector<std::string>{"lead", "trail"});
  // Composed vs decomposed token bytes compare equal after tokenize().
  CHECK(text::tokenize("x \xe0\xa7\x9c y") == text::tokenize("x \xe0\xa6\xa1\xe0\xa6\xbc y"));
}

TEST_CASE("strip_punct") {
  CHECK(text::strip_punct("hello,") == "hello");
  CHECK(text::strip_punct("\"quoted!\"") == "quoted");
  CHECK(text::strip_punct("\xe0\xa6\x95\xe0\xa5\xa4") == "\xe0\xa6\x95");  // danda
  CHECK(text::strip_punct("...") == "");
  CHECK(text::strip_punct("in-word") == "in-word");  // interior punctuation stays
}

TEST_CASE("classify_token_script") {
  using text::ScriptClass;
  // Single-codepoint block lookups.
  CHECK(text::classify_token_script("\xe0\xa6\x95") == ScriptClass::Bengali);    // U+0995
  CHECK(text::classify_token_script("\xe0\xa4\x95") == ScriptClass::Devanagari); // U+0915
  CHECK(text::classify_token_script("\xd8\xa8") == ScriptClass::Arabic);         // U+0628
  CHECK(text::classify_token_script("\xe0\xb4\x95") == ScriptClass::Malayalam);  // U+0D15
  CHECK(text::classify_token_script("\xe0\xb0\x95") == ScriptClass::Telugu);     // U+0C15
  CHECK(text::classify_token_script("abc") == ScriptClass::Latin);
  CHECK(text::classify_token_script("123,") == ScriptClass::Neutral);
  CHECK(text::classify_token_script("\xe2\x98\x83") == ScriptClass::Other);      // snowman

  SUBCASE("majority codepoint wins") {
    // Two Bengali letters + one Latin letter.
    CHECK(text::classify_token_script("\xe0\xa6\x95\xe0\xa6\x96x") == ScriptClass::Bengali);
    // Two Latin + one Bengali.
    CHECK(text::classify_token_script("xy\xe0\xa6\x95") == ScriptClass::Latin);
  }
  SUBCASE("ties break away from Bengali") {
    CHECK(text::classify_token_script("x\xe0\xa6\x95") == ScriptClass::Latin);
    CHECK(text::classify_token_script("\xe0\xa4\x95\xe0\xa6\x95") == ScriptClass::Devanagari);
  }
  SUBCASE("classification is total on arbitrary bytes") {
    for (int b0 = 0; b0 < 256; ++b0) {
      std::string s(1, static_cast<char>(b0));
      (void)text::classify_token_script(s);  // must not throw
    }
  }
}
