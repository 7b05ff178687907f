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

#include "shobdosetu/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "shobdosetu/errors.hpp"
#include "shobdosetu/fuzzy.hpp"
#include "shobdosetu/text.hpp"

namespace shobdosetu::corpus {

namespace {

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

}  // namespace

std::vector<SubtitleChunk> parse_chunks(const nlohmann::json& document,
                                        std::string_view source_id) {
  if (!document.is_array()) {
    raise(Errc::MalformedDocument, "chunk document must be a JSON array");
  }

  std::vector<SubtitleChunk> chunks;
  chunks.reserve(document.size());
  for (const auto& item : document) {
    if (!item.is_object() || !item.contains("start") ||
        !item.contains("duration")) {
      raise(Errc::MalformedDocument,
            "chunk objects need numeric \"start\" and \"duration\"");
    }
    if (!item["start"].is_number() || !item["duration"].is_number()) {
      raise(Errc::MalformedDocument, "start/duration must be numbers");
    }
    SubtitleChunk c;
    c.source_id = std::string(source_id);
    c.start_s = item["start"].get<double>();
    c.duration_s = item["duration"].get<double>();
    if (c.start_s < 0.0 || c.duration_s <= 0.0) {
      raise(Errc::NegativeTime, "chunk with negative start or non-positive duration");
    }
    if (item.contains("text") && !item["text"].is_null()) {
      if (!item["text"].is_string()) {
        raise(Errc::MalformedDocument, "text must be a string or null");
      }
      c.text = item["text"].get<std::string>();
    }
    chunks.push_back(std::move(c));
  }

  std::stable_sort(chunks.begin(), chunks.end(),
                   [](const SubtitleChunk& a, const SubtitleChunk& b) {
                     return a.start_s < b.start_s;
                   });

  // Clip overlapping neighbours at the midpoint of the overlap. A chunk
  // nested entirely inside its predecessor is dropped.
  std::vector<SubtitleChunk> out;
  out.reserve(chunks.size());
  for (auto& c : chunks) {
    if (!out.empty() && out.back().end_s() > c.start_s) {
      SubtitleChunk& prev = out.back();
      if (c.end_s() <= prev.end_s()) continue;
      const double mid = 0.5 * (c.start_s + prev.end_s());
      const double end = c.end_s();
      prev.duration_s = mid - prev.start_s;
      c.start_s = mid;
      c.duration_s = end - mid;
    }
    out.push_back(std::move(c));
  }

  char buf[32];
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::snprintf(buf, sizeof buf, "_%04zu", i);
    out[i].chunk_id = std::string(source_id) + buf;
  }
  return out;
}

FilterDecision filter_language(const SubtitleChunk& chunk) {
  if (!chunk.text) raise(Errc::EmptyTranscript, "filter_language: non-speech chunk");

  FilterDecision decision;
  const std::vector<std::string> tokens = text::tokenize(*chunk.text);
  bool drop = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    switch (text::classify_token_script(tokens[i])) {
      case text::ScriptClass::Bengali:
      case text::ScriptClass::Latin:
      case text::ScriptClass::Neutral:
        break;
      case text::ScriptClass::Devanagari:
        decision.positions.push_back(i);
        break;
      default:
        drop = true;
        break;
    }
  }
  if (drop) {
    decision.kind = FilterDecision::Kind::Drop;
    decision.positions.clear();
  } else if (!decision.positions.empty()) {
    decision.kind = FilterDecision::Kind::NeedsReplacement;
  } else {
    decision.kind = FilterDecision::Kind::Keep;
  }
  return decision;
}

audio::AudioClip audio_tail(const audio::AudioClip& source,
                            const SubtitleChunk& chunk, double tail_s) {
  if (chunk.start_s < 0.0 || chunk.end_s() > source.duration_s() + 1e-9) {
    raise(Errc::OutOfRange, "chunk interval outside source clip");
  }
  const double take = std::min(tail_s, chunk.duration_s);
  const double end = std::min(chunk.end_s(), source.duration_s());
  return audio::slice(source, end - take, end);
}

std::vector<BoundaryCandidate> candidate_list(const SubtitleChunk& current,
                                              const SubtitleChunk* next) {
  if (!current.text) raise(Errc::EmptyTranscript, "candidate_list: non-speech chunk");
  const std::vector<std::string> cur = text::tokenize(*current.text);
  if (cur.empty()) raise(Errc::EmptyTranscript, "candidate_list: empty transcript");

  std::vector<BoundaryCandidate> out;
  const std::size_t take = std::min<std::size_t>(5, cur.size());
  for (std::size_t i = cur.size() - take; i < cur.size(); ++i) {
    out.push_back({cur[i], CandidateOrigin::Current,
                   static_cast<int>(cur.size() - 1 - i)});
  }
  if (next && next->text) {
    const std::vector<std::string> nxt = text::tokenize(*next->text);
    const std::size_t take_next = std::min<std::size_t>(3, nxt.size());
    for (std::size_t i = 0; i < take_next; ++i) {
      out.push_back({nxt[i], CandidateOrigin::Next, static_cast<int>(i + 1)});
    }
  }
  return out;
}

BoundaryDecision select_boundary(const std::vector<std::string>& predicted,
                                 const std::vector<BoundaryCandidate>& candidates,
                                 double threshold) {
  BoundaryDecision d;
  if (predicted.empty() || candidates.empty()) {
    d.action.kind = BoundaryAction::Kind::Unvalidated;
    return d;
  }
  d.predicted_word = predicted.back();

  // First strict maximum in list order: ties keep the earlier candidate,
  // which puts Current origin ahead of Next by construction.
  double best = -1.0;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double r = fuzzy::similarity_ratio(d.predicted_word, candidates[i].word);
    if (r > best) {
      best = r;
      best_idx = i;
    }
  }

  d.selected_candidate = candidates[best_idx].word;
  d.candidate_index = static_cast<int>(best_idx);
  d.ratio = best;
  if (best < threshold) {
    d.action.kind = BoundaryAction::Kind::Unvalidated;
    return d;
  }

  const BoundaryCandidate& chosen = candidates[best_idx];
  if (chosen.origin == CandidateOrigin::Current) {
    if (chosen.k == 0) {
      d.action.kind = BoundaryAction::Kind::KeepBoundary;
    } else {
      d.action.kind = BoundaryAction::Kind::PushToNext;
      d.action.k = chosen.k;
    }
  } else {
    d.action.kind = BoundaryAction::Kind::PullFromNext;
    d.action.k = chosen.k;
  }
  return d;
}

std::vector<SubtitleChunk> realign(std::vector<SubtitleChunk> chunks,
                                   const std::vector<BoundaryDecision>& decisions) {
  if (chunks.size() >= 1 && decisions.size() + 1 != chunks.size()) {
    raise(Errc::InconsistentDecision,
          "expected one decision per adjacent chunk pair");
  }

  for (std::size_t i = 0; i + 1 < chunks.size(); ++i) {
    const BoundaryDecision& d = decisions[i];
    SubtitleChunk& cur = chunks[i];
    SubtitleChunk& nxt = chunks[i + 1];

    switch (d.action.kind) {
      case BoundaryAction::Kind::KeepBoundary:
        break;
      case BoundaryAction::Kind::Unvalidated:
        cur.boundary_unvalidated = true;
        break;
      case BoundaryAction::Kind::PullFromNext: {
        std::vector<std::string> nxt_words =
            nxt.text ? text::tokenize(*nxt.text) : std::vector<std::string>{};
        const auto k = static_cast<std::size_t>(d.action.k);
        if (k > nxt_words.size()) {
          raise(Errc::InconsistentDecision,
                "PullFromNext(" + std::to_string(k) + ") but next has " +
                    std::to_string(nxt_words.size()) + " words");
        }
        std::vector<std::string> cur_words =
            cur.text ? text::tokenize(*cur.text) : std::vector<std::string>{};
        cur_words.insert(cur_words.end(), nxt_words.begin(),
                         nxt_words.begin() + static_cast<long>(k));
        nxt_words.erase(nxt_words.begin(), nxt_words.begin() + static_cast<long>(k));
        cur.text = join_words(cur_words);
        nxt.text = join_words(nxt_words);
        break;
      }
      case BoundaryAction::Kind::PushToNext: {
        std::vector<std::string> cur_words =
            cur.text ? text::tokenize(*cur.text) : std::vector<std::string>{};
        const auto k = static_cast<std::size_t>(d.action.k);
        if (k > cur_words.size()) {
          raise(Errc::InconsistentDecision,
                "PushToNext(" + std::to_string(k) + ") but current has " +
                    std::to_string(cur_words.size()) + " words");
        }
        std::vector<std::string> nxt_words =
            nxt.text ? text::tokenize(*nxt.text) : std::vector<std::string>{};
        nxt_words.insert(nxt_words.begin(), cur_words.end() - static_cast<long>(k),
                         cur_words.end());
        cur_words.erase(cur_words.end() - static_cast<long>(k), cur_words.end());
        cur.text = join_words(cur_words);
        nxt.text = join_words(nxt_words);
        break;
      }
    }
  }
  return chunks;
}

SubtitleChunk null_nonspeech(SubtitleChunk chunk,
                             const std::vector<std::pair<double, double>>& nonspeech_zones,
                             double coverage_threshold) {
  if (!chunk.text || chunk.duration_s <= 0.0) return chunk;
  double covered = 0.0;
  for (const auto& [zs, ze] : nonspeech_zones) {
    const double lo = std::max(chunk.start_s, zs);
    const double hi = std::min(chunk.end_s(), ze);
    if (hi > lo) covered += hi - lo;
  }
  if (covered / chunk.duration_s >= coverage_threshold) chunk.text.reset();
  return chunk;
}

}  // namespace shobdosetu::corpus
