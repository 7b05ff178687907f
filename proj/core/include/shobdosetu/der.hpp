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
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "shobdosetu/rttm.hpp"

namespace shobdosetu::metrics {

struct SpeakerMapping {
  // One-to-one partial map; hyp speakers with no positive co-active overlap
  // stay unmapped.
  std::map<std::string, std::string> hyp_to_ref;
  int64_t total_overlap_ms = 0;
};

/// One-to-one partial mapping of hyp speakers to ref speakers maximizing
/// total co-active overlap (Hungarian method on the millisecond overlap
/// matrix). Among optima, returns the lexicographically smallest mapping
/// (hyp labels in sorted order each take the smallest ref label that still
/// attains the optimum), so reports are deterministic.
SpeakerMapping optimal_mapping(const Annotation& ref, const Annotation& hyp);

struct DerReport {
  double fa_s = 0.0;
  double miss_s = 0.0;
  double conf_s = 0.0;
  double total_s = 0.0;
  double der = 0.0;
  std::map<std::string, std::string> mapping;

  nlohmann::json to_json() const;
};

/// DER = (false alarm + miss + confusion) / total reference speech.
///
/// Time around every reference boundary (+/- collar_s) is excised from
/// scoring. The remaining timeline is swept as elementary intervals with
/// constant active-speaker sets; an interval of length d with ref set Rs
/// and mapped hyp set Hs contributes
///   miss += d * max(0, |Rs| - |Hs|)
///   fa   += d * max(0, |Hs| - |Rs|)
///   conf += d * (min(|Rs|, |Hs|) - |correctly matched|)
///   total += d * |Rs|
/// The speaker mapping is computed on the full annotations (collar applies
/// to scoring only). Arithmetic runs on the millisecond grid. Throws
/// EmptyReference when the scored reference time is zero.
DerReport der(const Annotation& ref, const Annotation& hyp, double collar_s = 0.0);

/// Pooled DER over recordings paired by uri: components are summed across
/// recordings before the final division. Throws UnpairedRecording when the
/// uri sets differ.
DerReport der_pooled(const std::vector<Annotation>& refs,
                     const std::vector<Annotation>& hyps, double collar_s = 0.0);

}  // namespace shobdosetu::metrics
