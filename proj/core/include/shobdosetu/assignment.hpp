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
#include <vector>

namespace shobdosetu::metrics {

struct AssignmentResult {
  std::vector<int> row_to_col;  // -1 for unassigned rows
  int64_t total = 0;
};

/// Maximum-total assignment for a non-negative score matrix (rows x cols,
/// possibly rectangular), solved with the Hungarian method on complementary
/// costs. Only the optimal total is unique; callers needing a canonical
/// assignment among ties must refine it themselves.
AssignmentResult max_assignment(const std::vector<std::vector<int64_t>>& score);

}  // namespace shobdosetu::metrics
