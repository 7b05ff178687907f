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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace shobdosetu::text {

// Invalid byte sequences decode to U+FFFD.
std::u32string utf8_decode(std::string_view utf8);
std::string utf8_encode(const std::u32string& codepoints);

/// Canonical composition (NFC), backed by ICU.
std::string nfc(std::string_view utf8);

/// NFC normalization followed by splitting on ASCII whitespace runs.
std::vector<std::string> tokenize(std::string_view s);

/// Strips leading/trailing punctuation (ASCII punctuation plus the Bengali
/// danda U+0964 / double danda U+0965 and common curly quotes).
std::string strip_punct(std::string_view token);

enum class ScriptClass {
  Bengali,
  Latin,
  Devanagari,
  Arabic,
  Malayalam,
  Telugu,
  Neutral,
  Other,
};

constexpr const char* script_name(ScriptClass s) {
  switch (s) {
    case ScriptClass::Bengali: return "Bengali";
    case ScriptClass::Latin: return "Latin";
    case ScriptClass::Devanagari: return "Devanagari";
    case ScriptClass::Arabic: return "Arabic";
    case ScriptClass::Malayalam: return "Malayalam";
    case ScriptClass::Telugu: return "Telugu";
    case ScriptClass::Neutral: return "Neutral";
    case ScriptClass::Other: return "Other";
  }
  return "Other";
}

/// Majority-codepoint script classification over the Unicode blocks the
/// corpus filter cares about. Tokens with no letter codepoints are Neutral.
/// Count ties resolve toward the class that triggers the stronger filtering
/// action (drop > replace > keep), so a tie never rescues a chunk.
ScriptClass classify_token_script(std::string_view token);

}  // namespace shobdosetu::text
