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

#include <json.hpp>

#include "shobdosetu/augment.hpp"
#include "shobdosetu/diarpost.hpp"
#include "shobdosetu/endpoint.hpp"

namespace shobdosetu {

/// Toolkit configuration, loaded from a single JSON document. Built-in
/// defaults < config file < command-line flags.
struct ToolkitConfig {
  uint64_t master_seed = 20260101;
  augment::AugmentRanges ranges;
  std::optional<std::filesystem::path> noise_dir;
  double snr_lo_db = 10.0;
  double snr_hi_db = 25.0;
  double split_ratio = 0.9;
  double fuzzy_threshold = 0.6;
  double collar_s = 0.0;
  double tail_s = 5.0;
  diarpost::ParamGrid grid;
  corpus::RemoteConfig endpoint;

  static ToolkitConfig defaults() { return {}; }

  /// Parses and overlays the given JSON document on top of *this. Unknown
  /// keys raise BadConfig, as do out-of-domain values (e.g. split_ratio
  /// outside (0, 1)).
  void apply_json(const nlohmann::json& j);

  static ToolkitConfig load(const std::filesystem::path& path);
};

}  // namespace shobdosetu
