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

#include "shobdosetu/rttm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "shobdosetu/errors.hpp"

namespace shobdosetu::metrics {

int64_t to_ms(double seconds) { return std::llround(seconds * 1000.0); }

Annotation canonicalized(const Annotation& ann) {
  Annotation out;
  out.uri = ann.uri;
  // Group per speaker on the ms grid, then merge touching/overlapping runs.
  std::map<std::string, std::vector<std::pair<int64_t, int64_t>>> by_speaker;
  for (const auto& seg : ann.segments) {
    const int64_t s = to_ms(seg.start_s);
    const int64_t e = to_ms(seg.end_s);
    if (e > s) by_speaker[seg.speaker].emplace_back(s, e);
  }
  for (auto& [speaker, ivals] : by_speaker) {
    std::sort(ivals.begin(), ivals.end());
    std::vector<std::pair<int64_t, int64_t>> merged;
    for (const auto& iv : ivals) {
      if (!merged.empty() && iv.first <= merged.back().second) {
        merged.back().second = std::max(merged.back().second, iv.second);
      } else {
        merged.push_back(iv);
      }
    }
    for (const auto& [s, e] : merged) {
      out.segments.push_back({s / 1000.0, e / 1000.0, speaker});
    }
  }
  std::sort(out.segments.begin(), out.segments.end(),
            [](const SpeakerSegment& a, const SpeakerSegment& b) {
              return std::tie(a.start_s, a.end_s, a.speaker) <
                     std::tie(b.start_s, b.end_s, b.speaker);
            });
  return out;
}

double total_speech_s(const Annotation& ann) {
  double total = 0.0;
  for (const auto& seg : ann.segments) total += seg.end_s - seg.start_s;
  return total;
}

std::vector<Annotation> parse_rttm(std::istream& in) {
  std::map<std::string, Annotation> by_uri;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.rfind(";;", 0) == 0) continue;
    std::istringstream ls(line);
    std::vector<std::string> fields;
    std::string f;
    while (ls >> f) fields.push_back(f);
    if (fields.empty()) continue;
    if (fields[0] != "SPEAKER") continue;  // other record types are ignored
    if (fields.size() != 10) {
      raise(Errc::MalformedLine,
            "line " + std::to_string(line_no) + ": expected 10 fields, got " +
                std::to_string(fields.size()));
    }
    double onset = 0.0, dur = 0.0;
    try {
      std::size_t used = 0;
      onset = std::stod(fields[3], &used);
      if (used != fields[3].size()) throw std::invalid_argument(fields[3]);
      dur = std::stod(fields[4], &used);
      if (used != fields[4].size()) throw std::invalid_argument(fields[4]);
    } catch (const std::exception&) {
      raise(Errc::MalformedLine,
            "line " + std::to_string(line_no) + ": bad onset/duration");
    }
    if (dur < 0.0 || onset < 0.0) {
      raise(Errc::MalformedLine,
            "line " + std::to_string(line_no) + ": negative time");
    }
    Annotation& ann = by_uri[fields[1]];
    ann.uri = fields[1];
    ann.segments.push_back({onset, onset + dur, fields[7]});
  }
  std::vector<Annotation> out;
  out.reserve(by_uri.size());
  for (auto& [uri, ann] : by_uri) out.push_back(std::move(ann));
  return out;
}

std::vector<Annotation> parse_rttm_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::NotFound, "cannot open " + path.string());
  return parse_rttm(in);
}

void write_rttm(std::ostream& out, const std::vector<Annotation>& annotations) {
  char buf[64];
  for (const auto& ann : annotations) {
    for (const auto& seg : ann.segments) {
      std::snprintf(buf, sizeof buf, "%.3f %.3f", seg.start_s,
                    seg.end_s - seg.start_s);
      out << "SPEAKER " << ann.uri << " 1 " << buf << " <NA> <NA> "
          << seg.speaker << " <NA> <NA>\n";
    }
  }
}

void write_rttm_file(const std::filesystem::path& path,
                     const std::vector<Annotation>& annotations) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) raise(Errc::IoFailure, "cannot write " + path.string());
  write_rttm(out, annotations);
  if (!out) raise(Errc::IoFailure, "short write to " + path.string());
}

}  // namespace shobdosetu::metrics
