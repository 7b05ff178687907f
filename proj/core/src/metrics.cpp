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

#include "shobdosetu/metrics.hpp"

#include <algorithm>

#include "shobdosetu/errors.hpp"
#include "shobdosetu/text.hpp"

namespace shobdosetu::metrics {

std::vector<std::string> tokenize(std::string_view s) {
  return text::tokenize(s);
}

namespace {

std::vector<std::string> tokenize_for_wer(std::string_view s, bool strip) {
  std::vector<std::string> tokens = text::tokenize(s);
  if (!strip) return tokens;
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    std::string stripped = text::strip_punct(t);
    if (!stripped.empty()) out.push_back(std::move(stripped));
  }
  return out;
}

}  // namespace

TokenAlignment align_tokens(const std::vector<std::string>& ref,
                            const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();

  // d[i][j] = minimal edits between ref[0,i) and hyp[0,j).
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const int sub = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }

  // Backtrace with preference match > substitution > deletion > insertion.
  TokenAlignment a;
  a.ref_count = static_cast<int>(n);
  std::size_t i = n, j = m;
  std::vector<EditOp> rev;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] && d[i][j] == d[i - 1][j - 1]) {
      rev.push_back(EditOp::Match);
      --i, --j;
    } else if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + 1) {
      rev.push_back(EditOp::Substitute);
      --i, --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      rev.push_back(EditOp::Delete);
      --i;
    } else {
      rev.push_back(EditOp::Insert);
      --j;
    }
  }
  a.ops.assign(rev.rbegin(), rev.rend());
  for (EditOp op : a.ops) {
    switch (op) {
      case EditOp::Match: ++a.correct; break;
      case EditOp::Substitute: ++a.substitutions; break;
      case EditOp::Delete: ++a.deletions; break;
      case EditOp::Insert: ++a.insertions; break;
    }
  }
  return a;
}

nlohmann::json WerReport::to_json() const {
  return nlohmann::json{
      {"wer_percent", wer_percent},
      {"substitutions", alignment.substitutions},
      {"deletions", alignment.deletions},
      {"insertions", alignment.insertions},
      {"correct", alignment.correct},
      {"ref_tokens", alignment.ref_count},
  };
}

WerReport wer(std::string_view ref, std::string_view hyp, bool strip_punctuation) {
  const std::vector<std::string> r = tokenize_for_wer(ref, strip_punctuation);
  const std::vector<std::string> h = tokenize_for_wer(hyp, strip_punctuation);
  if (r.empty() && !h.empty()) {
    raise(Errc::EmptyReference, "reference has no tokens");
  }
  WerReport report;
  report.alignment = align_tokens(r, h);
  report.wer_percent =
      r.empty() ? 0.0
                : 100.0 * report.alignment.total_errors() /
                      static_cast<double>(report.alignment.ref_count);
  return report;
}

WerReport corpus_wer(const std::vector<std::pair<std::string, std::string>>& pairs,
                     bool strip_punctuation) {
  WerReport pooled;
  bool any_tokens = false;
  for (const auto& [ref, hyp] : pairs) {
    const std::vector<std::string> r = tokenize_for_wer(ref, strip_punctuation);
    const std::vector<std::string> h = tokenize_for_wer(hyp, strip_punctuation);
    if (r.empty() && !h.empty()) {
      raise(Errc::EmptyReference, "reference has no tokens");
    }
    if (!r.empty()) any_tokens = true;
    TokenAlignment a = align_tokens(r, h);
    pooled.alignment.substitutions += a.substitutions;
    pooled.alignment.deletions += a.deletions;
    pooled.alignment.insertions += a.insertions;
    pooled.alignment.correct += a.correct;
    pooled.alignment.ref_count += a.ref_count;
  }
  if (!any_tokens) raise(Errc::EmptyCorpus, "no pair has reference tokens");
  pooled.wer_percent = 100.0 * pooled.alignment.total_errors() /
                       static_cast<double>(pooled.alignment.ref_count);
  return pooled;
}

}  // namespace shobdosetu::metrics
