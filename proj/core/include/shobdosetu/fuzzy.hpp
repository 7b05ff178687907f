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

#include <string>
#include <string_view>

namespace shobdosetu::fuzzy {

/// Ratcliff/Obershelp gestalt similarity: 2*M / (|a| + |b|), where M is the
/// total length of matches found by recursively taking the longest common
/// substring (earliest in a, then earliest in b, among equally long ones).
/// Operates on Unicode codepoints. Two empty strings compare as 1.
///
/// The greedy decomposition makes the measure order-sensitive in rare cases
/// (an inherent property of the algorithm, shared by every faithful
/// implementation); callers compare prediction-vs-candidate in one fixed
/// argument order.
double similarity_ratio(std::string_view a, std::string_view b);
double similarity_ratio(const std::u32string& a, const std::u32string& b);

}  // namespace shobdosetu::fuzzy
