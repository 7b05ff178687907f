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

#include "shobdosetu/config.hpp"

#include <fstream>

#include "shobdosetu/errors.hpp"

namespace shobdosetu {

namespace {

void read_range(const nlohmann::json& j, const char* key, double& lo, double& hi) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) {
    raise(Errc::BadConfig, std::string(key) + " must be [lo, hi]");
  }
  lo = v[0].get<double>();
  hi = v[1].get<double>();
  if (hi < lo) raise(Errc::BadConfig, std::string(key) + ": hi < lo");
}

void read_number(const nlohmann::json& j, const char* key, double& out) {
  if (j.contains(key)) out = j.at(key).get<double>();
}

void apply_augment_ranges(const nlohmann::json& j, augment::AugmentRanges& r) {
  static const char* known[] = {
      "covered_fc_hz",      "covered_slope",        "covered_lf_boost_db",
      "covered_ripple_period_hz", "covered_ripple_depth", "covered_noise_dbfs",
      "covered_clip_drive", "underwater_fc_hz",     "underwater_slope",
      "underwater_scoop_db", "underwater_scoop_center_hz", "underwater_scoop_q",
      "underwater_wobble_hz", "underwater_wobble_depth", "zone_s",
      "crossfade_s",
  };
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) raise(Errc::BadConfig, "unknown augment key: " + key);
  }
  read_range(j, "covered_fc_hz", r.cm_fc_lo, r.cm_fc_hi);
  read_range(j, "covered_slope", r.cm_slope_lo, r.cm_slope_hi);
  read_range(j, "covered_lf_boost_db", r.cm_lf_boost_lo, r.cm_lf_boost_hi);
  read_number(j, "covered_ripple_period_hz", r.cm_ripple_period_hz);
  read_range(j, "covered_ripple_depth", r.cm_ripple_depth_lo, r.cm_ripple_depth_hi);
  read_range(j, "covered_noise_dbfs", r.cm_noise_lo_dbfs, r.cm_noise_hi_dbfs);
  read_number(j, "covered_clip_drive", r.cm_clip_drive);
  read_range(j, "underwater_fc_hz", r.uw_fc_lo, r.uw_fc_hi);
  read_number(j, "underwater_slope", r.uw_slope);
  read_range(j, "underwater_scoop_db", r.uw_scoop_lo_db, r.uw_scoop_hi_db);
  read_number(j, "underwater_scoop_center_hz", r.uw_scoop_center_hz);
  read_number(j, "underwater_scoop_q", r.uw_scoop_q);
  read_number(j, "underwater_wobble_hz", r.uw_wobble_hz);
  read_range(j, "underwater_wobble_depth", r.uw_wobble_depth_lo, r.uw_wobble_depth_hi);
  read_range(j, "zone_s", r.zone_min_s, r.zone_max_s);
  read_number(j, "crossfade_s", r.crossfade_s);
}

}  // namespace

void ToolkitConfig::apply_json(const nlohmann::json& j) {
  if (!j.is_object()) raise(Errc::BadConfig, "config must be a JSON object");
  static const char* known[] = {
      "master_seed", "augment",        "noise_dir",  "snr_range_db",
      "split_ratio", "fuzzy_threshold", "collar_s",   "tail_s",
      "grid",        "endpoint",
  };
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) raise(Errc::BadConfig, "unknown config key: " + key);
  }

  if (j.contains("master_seed")) master_seed = j.at("master_seed").get<uint64_t>();
  if (j.contains("augment")) apply_augment_ranges(j.at("augment"), ranges);
  if (j.contains("noise_dir")) {
    noise_dir = std::filesystem::path(j.at("noise_dir").get<std::string>());
  }
  read_range(j, "snr_range_db", snr_lo_db, snr_hi_db);
  if (j.contains("split_ratio")) {
    split_ratio = j.at("split_ratio").get<double>();
    if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
      raise(Errc::BadConfig, "split_ratio must be in (0, 1)");
    }
  }
  if (j.contains("fuzzy_threshold")) {
    fuzzy_threshold = j.at("fuzzy_threshold").get<double>();
    if (fuzzy_threshold < 0.0 || fuzzy_threshold > 1.0) {
      raise(Errc::BadConfig, "fuzzy_threshold must be in [0, 1]");
    }
  }
  if (j.contains("collar_s")) {
    collar_s = j.at("collar_s").get<double>();
    if (collar_s < 0.0) raise(Errc::BadConfig, "collar_s must be >= 0");
  }
  if (j.contains("tail_s")) {
    tail_s = j.at("tail_s").get<double>();
    if (tail_s <= 0.0) raise(Errc::BadConfig, "tail_s must be > 0");
  }
  if (j.contains("grid")) grid = diarpost::ParamGrid::from_json(j.at("grid"));
  if (j.contains("endpoint")) {
    const auto& e = j.at("endpoint");
    if (e.contains("url")) endpoint.url = e.at("url").get<std::string>();
    if (e.contains("timeout_s")) endpoint.timeout_s = e.at("timeout_s").get<double>();
    if (e.contains("max_inflight")) {
      endpoint.max_inflight = e.at("max_inflight").get<int>();
      if (endpoint.max_inflight < 1) {
        raise(Errc::BadConfig, "endpoint.max_inflight must be >= 1");
      }
    }
    if (e.contains("retries")) endpoint.retries = e.at("retries").get<int>();
  }
}

ToolkitConfig ToolkitConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::NotFound, "cannot open config " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) raise(Errc::BadConfig, "config is not valid JSON");
  ToolkitConfig cfg;
  cfg.apply_json(j);
  return cfg;
}

}  // namespace shobdosetu
