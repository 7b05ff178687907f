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

#include "shobdosetu/fuzzy.hpp"

#include <array>
#include <cstddef>
#include <vector>

#include "shobdosetu/text.hpp"

namespace shobdosetu::fuzzy {

namespace {

struct Match {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
};

// Longest common substring of a[alo, ahi) and b[blo, bhi). Among equally
// long matches the one starting earliest in a, then earliest in b, wins --
// scanning i and j in ascending order and only accepting strictly longer
// runs gives exactly that.
Match longest_match(const std::u32string& a, const std::u32string& b,
                    std::size_t alo, std::size_t ahi, std::size_t blo,
                    std::size_t bhi) {
  Match best{alo, blo, 0};
  std::vector<std::size_t> run(bhi - blo, 0), prev(bhi - blo, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    for (std::size_t j = blo; j < bhi; ++j) {
      std::size_t k = 0;
      if (a[i] == b[j]) {
        k = (j > blo ? prev[j - blo - 1] : 0) + 1;
        if (k > best.size) best = {i - k + 1, j - k + 1, k};
      }
      run[j - blo] = k;
    }
    run.swap(prev);
  }
  return best;
}

std::size_t matched_total(const std::u32string& a, const std::u32string& b) {
  std::size_t total = 0;
  std::vector<std::array<std::size_t, 4>> stack;
  stack.push_back({0, a.size(), 0, b.size()});
  while (!stack.empty()) {
    auto [alo, ahi, blo, bhi] = stack.back();
    stack.pop_back();
    if (alo >= ahi || blo >= bhi) continue;
    Match m = longest_match(a, b, alo, ahi, blo, bhi);
    if (m.size == 0) continue;
    total += m.size;
    stack.push_back({alo, m.a, blo, m.b});
    stack.push_back({m.a + m.size, ahi, m.b + m.size, bhi});
  }
  return total;
}

}  // namespace

double similarity_ratio(const std::u32string& a, const std::u32string& b) {
  const std::size_t denom = a.size() + b.size();
  if (denom == 0) return 1.0;
  return 2.0 * static_cast<double>(matched_total(a, b)) /
         static_cast<double>(denom);
}

double similarity_ratio(std::string_view a, std::string_view b) {
  return similarity_ratio(text::utf8_decode(a), text::utf8_decode(b));
}

}  // namespace shobdosetu::fuzzy
