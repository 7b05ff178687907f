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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace shobdosetu::metrics {

struct SpeakerSegment {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string speaker;
};

/// Speaker segments for one recording. Overlap between different speakers
/// is allowed; canonicalized() enforces that same-speaker segments never
/// touch or overlap.
struct Annotation {
  std::string uri;
  std::vector<SpeakerSegment> segments;
};

/// Sorts by (start, end, speaker), drops non-positive segments, and merges
/// touching or overlapping same-speaker segments. All post-processing and
/// scoring operates on canonical annotations.
Annotation canonicalized(const Annotation& ann);

/// Total speech duration per the annotation (overlap counted per speaker).
double total_speech_s(const Annotation& ann);

/// Parses "SPEAKER <uri> <chan> <onset> <dur> <NA> <NA> <speaker> <NA> <NA>"
/// lines, grouped by uri (sorted). Blank lines, ";;"-comments, and
/// non-SPEAKER record types are skipped. Throws MalformedLine on a SPEAKER
/// line with a wrong field count, unparsable numbers, or negative duration.
std::vector<Annotation> parse_rttm(std::istream& in);
std::vector<Annotation> parse_rttm_file(const std::filesystem::path& path);

/// Writes SPEAKER lines with onset/duration at 3 decimals (1 ms); parsing
/// the output reproduces the annotations at that resolution.
void write_rttm(std::ostream& out, const std::vector<Annotation>& annotations);
void write_rttm_file(const std::filesystem::path& path,
                     const std::vector<Annotation>& annotations);

// Millisecond grid used for all interval arithmetic.
int64_t to_ms(double seconds);

}  // namespace shobdosetu::metrics
