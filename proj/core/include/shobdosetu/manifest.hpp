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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shobdosetu/augment.hpp"

namespace shobdosetu::corpus {

enum class Split { Train, Val };

struct ManifestEntry {
  std::string chunk_id;
  std::string audio_path;  // relative to the corpus audio directory
  double offset_s = 0.0;
  double duration_s = 0.0;
  std::optional<std::string> transcript;  // absent = non-speech
  Split split = Split::Train;
  bool augmented = false;
  std::optional<augment::AugmentRecipe> recipe;
  int sample_rate_hz = 0;
};

void to_json(nlohmann::json& j, const ManifestEntry& e);
void from_json(const nlohmann::json& j, ManifestEntry& e);

/// Train iff seeded_hash(master_seed, chunk_id) / 2^64 < ratio. Depends only
/// on the id, so the assignment is order- and concurrency-independent.
Split assign_split(uint64_t master_seed, std::string_view chunk_id, double ratio);

void split_train_val(std::vector<ManifestEntry>& entries, double ratio,
                     uint64_t master_seed);

struct ManifestSummary {
  std::size_t kept = 0;
  std::size_t replaced = 0;
  std::size_t dropped = 0;
  std::size_t unvalidated = 0;
  std::size_t skipped = 0;     // missing audio or out-of-range chunks
  std::size_t nonspeech = 0;
  std::size_t augmented = 0;
  std::size_t train = 0;
  std::size_t val = 0;

  nlohmann::json to_json() const;
};

/// One JSON object per line, sorted by chunk_id regardless of input order.
void write_manifest(const std::filesystem::path& path,
                    std::vector<ManifestEntry> entries);

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

}  // namespace shobdosetu::corpus
