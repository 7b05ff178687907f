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

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "shobdosetu/audio_clip.hpp"

namespace shobdosetu::corpus {

/// Predicts the final spoken words of a chunk from its audio tail. An empty
/// return means "no usable prediction" and leaves the boundary unvalidated;
/// implementations never throw for empty speech.
class EndpointProvider {
 public:
  virtual ~EndpointProvider() = default;
  virtual std::vector<std::string> predict(const std::string& chunk_id,
                                           const audio::AudioClip& tail) = 0;
};

/// Supplies replacement words for flagged token positions. Must return
/// exactly positions.size() words for the substitution to be applied;
/// anything else (including empty) means "no replacement available".
class ReplacementProvider {
 public:
  virtual ~ReplacementProvider() = default;
  virtual std::vector<std::string> replacements(
      const std::string& chunk_id, const std::vector<std::string>& tokens,
      const std::vector<std::size_t>& positions) = 0;
};

/// Offline providers backed by a JSONL lookup table of
/// {"chunk_id": string, "words": [string]}. Unknown ids yield empty lists.
std::unique_ptr<EndpointProvider> make_file_endpoint_provider(
    const std::filesystem::path& jsonl_path);
std::unique_ptr<ReplacementProvider> make_file_replacement_provider(
    const std::filesystem::path& jsonl_path);

struct RemoteConfig {
  std::string url;      // SHOBDOSETU_ENDPOINT_URL
  std::string api_key;  // SHOBDOSETU_ENDPOINT_API_KEY, sent as a Bearer token
  double timeout_s = 30.0;
  int max_inflight = 4;
  int retries = 3;  // exponential backoff between attempts
};

RemoteConfig remote_config_from_env();

/// HTTP providers. predict() POSTs
///   {"task": "endpoint", "chunk_id": ..., "sample_rate_hz": ...,
///    "audio_base64": <base64 of a PCM16 WAV>}
/// and replacements() POSTs
///   {"task": "replace", "chunk_id": ..., "tokens": [...], "positions": [...]}
/// expecting {"words": [...]} back. Failures after all retries are logged
/// and reported as empty predictions, never as exceptions.
std::unique_ptr<EndpointProvider> make_remote_endpoint_provider(RemoteConfig cfg);
std::unique_ptr<ReplacementProvider> make_remote_replacement_provider(RemoteConfig cfg);

std::string base64_encode(const unsigned char* data, std::size_t len);

}  // namespace shobdosetu::corpus
