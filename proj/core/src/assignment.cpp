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

#include "shobdosetu/assignment.hpp"

#include <algorithm>
#include <limits>

namespace shobdosetu::metrics {

// Classic O(n^3) Hungarian algorithm with row/column potentials, minimizing
// cost = max_score - score on a zero-padded square matrix. Padding cells
// carry score 0, so rows matched to padding come back unassigned.
AssignmentResult max_assignment(const std::vector<std::vector<int64_t>>& score) {
  const std::size_t rows = score.size();
  const std::size_t cols = rows ? score[0].size() : 0;
  AssignmentResult result;
  result.row_to_col.assign(rows, -1);
  if (rows == 0 || cols == 0) return result;

  int64_t max_w = 0;
  for (const auto& r : score) {
    for (int64_t v : r) max_w = std::max(max_w, v);
  }

  const std::size_t n = std::max(rows, cols);
  const int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  std::vector<std::vector<int64_t>> cost(n + 1, std::vector<int64_t>(n + 1, max_w));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) cost[i + 1][j + 1] = max_w - score[i][j];
  }

  std::vector<int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      int64_t delta = kInf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const int64_t cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = p[j];
    if (i >= 1 && i <= rows && j <= cols) {
      result.row_to_col[i - 1] = static_cast<int>(j - 1);
      result.total += score[i - 1][j - 1];
    }
  }
  return result;
}

}  // namespace shobdosetu::metrics
