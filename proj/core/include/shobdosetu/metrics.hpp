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
#include <utility>
#include <vector>

#include <json.hpp>

namespace shobdosetu::metrics {

enum class EditOp { Match, Substitute, Delete, Insert };

struct TokenAlignment {
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  int correct = 0;
  int ref_count = 0;  // correct + substitutions + deletions
  std::vector<EditOp> ops;

  int total_errors() const { return substitutions + deletions + insertions; }
};

/// NFC normalization, then split on whitespace runs.
std::vector<std::string> tokenize(std::string_view s);

/// Minimal edit distance under unit costs. Backtrace prefers
/// match > substitution > deletion > insertion, which shapes the op
/// breakdown but never the total.
TokenAlignment align_tokens(const std::vector<std::string>& ref,
                            const std::vector<std::string>& hyp);

struct WerReport {
  TokenAlignment alignment;
  double wer_percent = 0.0;

  nlohmann::json to_json() const;
};

/// WER = (S + D + I) / N * 100. Empty reference against a non-empty
/// hypothesis throws EmptyReference; two empty strings score 0.
WerReport wer(std::string_view ref, std::string_view hyp,
              bool strip_punctuation = false);

/// Pooled corpus WER: sum of errors over all pairs divided by the summed
/// reference token count. Throws EmptyCorpus when no pair has tokens.
WerReport corpus_wer(const std::vector<std::pair<std::string, std::string>>& pairs,
                     bool strip_punctuation = false);

}  // namespace shobdosetu::metrics
