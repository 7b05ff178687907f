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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "shobdosetu/audio_clip.hpp"

namespace shobdosetu::corpus {

/// Timestamped transcript unit. Absent text marks non-speech audio.
struct SubtitleChunk {
  std::string chunk_id;
  std::string source_id;
  double start_s = 0.0;
  double duration_s = 0.0;
  std::optional<std::string> text;
  // Set by realign() when the trailing boundary could not be validated;
  // such chunks are excluded from the manifest and counted separately.
  bool boundary_unvalidated = false;

  double end_s() const { return start_s + duration_s; }
};

/// Parses a JSON array of {"start": s, "duration": s, "text": string|null}.
/// Chunks come back sorted by start with overlapping neighbours clipped at
/// the midpoint of their overlap; chunk ids are "<source_id>_<index>".
/// Throws MalformedDocument / NegativeTime.
std::vector<SubtitleChunk> parse_chunks(const nlohmann::json& document,
                                        std::string_view source_id);

struct FilterDecision {
  enum class Kind { Keep, NeedsReplacement, Drop };
  Kind kind = Kind::Keep;
  std::vector<std::size_t> positions;  // offending token indices (replace)
};

/// Language filter: Bengali/Latin/Neutral tokens keep the chunk, any
/// Devanagari token requests replacement, any Arabic/Malayalam/Telugu/Other
/// token drops it. Drop wins when both kinds of offender are present.
FilterDecision filter_language(const SubtitleChunk& chunk);

/// The final min(tail_s, chunk duration) seconds of the chunk's audio,
/// given the whole source recording. Throws OutOfRange when the chunk
/// interval is not inside the clip.
audio::AudioClip audio_tail(const audio::AudioClip& source,
                            const SubtitleChunk& chunk, double tail_s = 5.0);

enum class CandidateOrigin { Current, Next };

struct BoundaryCandidate {
  std::string word;
  CandidateOrigin origin;
  // Current: distance from the end (0 = last word). Next: 1-based index.
  int k = 0;
};

/// Last 5 words of the current chunk followed by the first 3 words of the
/// next (fewer when short; next may be null or textless). Throws
/// EmptyTranscript when the current chunk has no words.
std::vector<BoundaryCandidate> candidate_list(const SubtitleChunk& current,
                                              const SubtitleChunk* next);

struct BoundaryAction {
  enum class Kind { KeepBoundary, PullFromNext, PushToNext, Unvalidated };
  Kind kind = Kind::Unvalidated;
  int k = 0;  // word count moved, for Pull/Push
};

struct BoundaryDecision {
  std::string chunk_id;
  std::string predicted_word;
  std::string selected_candidate;
  int candidate_index = 0;
  double ratio = 0.0;
  BoundaryAction action;
};

/// Matches the last predicted word against each candidate by gestalt ratio
/// and derives the boundary action from the argmax. Ties prefer
/// Current-origin candidates, then the earliest list position. A best ratio
/// below the threshold (or an empty prediction) yields Unvalidated.
BoundaryDecision select_boundary(const std::vector<std::string>& predicted,
                                 const std::vector<BoundaryCandidate>& candidates,
                                 double threshold = 0.6);

/// Applies one decision per adjacent pair: PullFromNext(k) moves the first
/// k words of the next chunk's text into the current one, PushToNext(k)
/// moves the current chunk's last k words to the front of the next.
/// Timestamps never move; Unvalidated flags the current chunk for
/// exclusion. Throws InconsistentDecision when k exceeds available words.
std::vector<SubtitleChunk> realign(std::vector<SubtitleChunk> chunks,
                                   const std::vector<BoundaryDecision>& decisions);

/// Blanks the transcript when at least coverage_threshold of the chunk
/// interval lies inside the given non-speech zones (sorted, disjoint).
SubtitleChunk null_nonspeech(SubtitleChunk chunk,
                             const std::vector<std::pair<double, double>>& nonspeech_zones,
                             double coverage_threshold = 0.8);

}  // namespace shobdosetu::corpus
