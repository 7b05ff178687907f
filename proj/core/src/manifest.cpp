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

#include "shobdosetu/manifest.hpp"

#include <algorithm>
#include <fstream>

#include "shobdosetu/errors.hpp"
#include "shobdosetu/hash.hpp"

namespace shobdosetu::corpus {

void to_json(nlohmann::json& j, const ManifestEntry& e) {
  j = nlohmann::json{
      {"chunk_id", e.chunk_id},
      {"audio_path", e.audio_path},
      {"offset_s", e.offset_s},
      {"duration_s", e.duration_s},
      {"split", e.split == Split::Train ? "train" : "val"},
      {"augmented", e.augmented},
      {"sample_rate_hz", e.sample_rate_hz},
  };
  if (e.transcript) j["transcript"] = *e.transcript;
  if (e.recipe) j["recipe"] = *e.recipe;
}

void from_json(const nlohmann::json& j, ManifestEntry& e) {
  e.chunk_id = j.at("chunk_id").get<std::string>();
  e.audio_path = j.at("audio_path").get<std::string>();
  e.offset_s = j.at("offset_s").get<double>();
  e.duration_s = j.at("duration_s").get<double>();
  e.split = j.at("split").get<std::string>() == "train" ? Split::Train : Split::Val;
  e.augmented = j.at("augmented").get<bool>();
  e.sample_rate_hz = j.at("sample_rate_hz").get<int>();
  e.transcript.reset();
  if (j.contains("transcript") && !j["transcript"].is_null()) {
    e.transcript = j["transcript"].get<std::string>();
  }
  e.recipe.reset();
  if (j.contains("recipe") && !j["recipe"].is_null()) {
    e.recipe = j["recipe"].get<augment::AugmentRecipe>();
  }
}

Split assign_split(uint64_t master_seed, std::string_view chunk_id, double ratio) {
  const uint64_t h = mix64(seeded_hash(master_seed, chunk_id));
  const double u = static_cast<double>(h) / 18446744073709551616.0;  // 2^64
  return u < ratio ? Split::Train : Split::Val;
}

void split_train_val(std::vector<ManifestEntry>& entries, double ratio,
                     uint64_t master_seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    raise(Errc::BadConfig, "split ratio must be in (0, 1)");
  }
  for (auto& e : entries) {
    e.split = assign_split(master_seed, e.chunk_id, ratio);
  }
}

nlohmann::json ManifestSummary::to_json() const {
  return nlohmann::json{
      {"kept", kept},           {"replaced", replaced},
      {"dropped", dropped},     {"unvalidated", unvalidated},
      {"skipped", skipped},     {"nonspeech", nonspeech},
      {"augmented", augmented}, {"train", train},
      {"val", val},
  };
}

void write_manifest(const std::filesystem::path& path,
                    std::vector<ManifestEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return a.chunk_id < b.chunk_id;
            });
  std::ofstream out(path, std::ios::trunc);
  if (!out) raise(Errc::IoFailure, "cannot write " + path.string());
  for (const auto& e : entries) {
    out << nlohmann::json(e).dump() << '\n';
  }
  if (!out) raise(Errc::IoFailure, "short write to " + path.string());
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::NotFound, "cannot open " + path.string());
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      raise(Errc::MalformedDocument,
            path.string() + ":" + std::to_string(line_no) + ": invalid JSON");
    }
    entries.push_back(j.get<ManifestEntry>());
  }
  return entries;
}

}  // namespace shobdosetu::corpus
