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
#include <string_view>

namespace shobdosetu {

// 64-bit FNV-1a. Per-item seeds and split assignment hash the master seed's
// eight little-endian bytes followed by the item id's UTF-8 bytes, so every
// module derives identical per-item state from (seed, id).
inline constexpr uint64_t kFnv64Offset = 14695981039346656037ull;
inline constexpr uint64_t kFnv64Prime = 1099511628211ull;

constexpr uint64_t fnv1a64(std::string_view bytes, uint64_t h = kFnv64Offset) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnv64Prime;
  }
  return h;
}

constexpr uint64_t seeded_hash(uint64_t master_seed, std::string_view id) {
  uint64_t h = kFnv64Offset;
  for (int i = 0; i < 8; ++i) {
    h ^= static_cast<unsigned char>(master_seed >> (8 * i));
    h *= kFnv64Prime;
  }
  return fnv1a64(id, h);
}

// splitmix64 finalizer. FNV-1a's high bits carry visible structure on short
// sequential ids (measured 0.866 instead of 0.9 on a 20k-id 90% threshold),
// so anything treating the hash as a uniform variate must mix it first.
constexpr uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace shobdosetu
