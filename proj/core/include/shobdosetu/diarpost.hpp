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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "shobdosetu/rttm.hpp"

namespace shobdosetu::diarpost {

struct PostParams {
  double min_duration_off_s = 0.0;   // max same-speaker gap to merge
  double round_granularity_s = 0.0;  // 0 = no rounding
  double min_segment_s = 0.0;        // drop shorter segments after merging
};

// Grid dimension names with built-in effect; other names are carried as
// opaque dimensions for external systems.
inline constexpr const char* kDimMinDurationOff = "min_duration_off";
inline constexpr const char* kDimRoundGranularity = "round_granularity";
inline constexpr const char* kDimMinSegment = "min_segment";

/// For each speaker independently, merges consecutive segments whose gap is
/// strictly less than min_duration_off_s, repeated to a fixpoint. Comparison
/// happens on the millisecond grid, so a gap exactly equal to the threshold
/// never merges.
metrics::Annotation merge_segments(const metrics::Annotation& ann,
                                   double min_duration_off_s);

/// Rounds every boundary to the nearest multiple of granularity_s (half away
/// from zero); segments that collapse to zero or negative length are
/// dropped. Granularity 0 is the identity.
metrics::Annotation round_boundaries(const metrics::Annotation& ann,
                                     double granularity_s);

/// merge -> drop segments shorter than min_segment_s -> round ->
/// re-canonicalize, iterated to a fixpoint so the whole pass is idempotent
/// (rounding can re-open small gaps that a single sweep would leave
/// unmerged).
metrics::Annotation apply_post(const metrics::Annotation& ann,
                               const PostParams& params);

/// Named, ordered grid dimensions; the search walks the cartesian product.
struct ParamGrid {
  std::vector<std::pair<std::string, std::vector<double>>> dims;

  std::size_t size() const;
  static ParamGrid from_json(const nlohmann::json& j);  // name -> [values]
};

struct GridResult {
  PostParams best_params;
  double best_der = 0.0;
  std::size_t best_index = 0;
  // Every grid point in enumeration order, with its pooled DER.
  std::vector<std::pair<std::map<std::string, double>, double>> table;

  nlohmann::json to_json() const;
};

/// Exhaustive evaluation of pooled DER for every grid point applied to the
/// hypotheses via apply_post. Recognized dimension names are
/// "min_duration_off", "round_granularity", and "min_segment"; other names
/// are enumerated but have no built-in effect. Ties resolve to the earliest
/// point in enumeration order (dimensions in the grid's order, first
/// dimension slowest). jobs > 1 parallelizes evaluation without changing
/// the result. Throws UnpairedRecording when hyp/ref uris differ.
GridResult grid_search(const ParamGrid& grid,
                       const std::vector<metrics::Annotation>& hyps,
                       const std::vector<metrics::Annotation>& refs,
                       double collar_s = 0.0, int jobs = 1);

}  // namespace shobdosetu::diarpost
