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
#include <vector>

#include "shobdosetu/config.hpp"
#include "shobdosetu/corpus.hpp"
#include "shobdosetu/endpoint.hpp"
#include "shobdosetu/manifest.hpp"
#include "shobdosetu/wav.hpp"

namespace shobdosetu::pipeline {

/// Corpus construction: parse -> language filter -> boundary validation ->
/// non-speech nulling -> split. chunks_path may be one JSON chunk file or a
/// directory of them (one source per file; source id = file stem). Audio is
/// looked up as <audio_dir>/<source_id>.wav. Sources with missing audio have
/// their chunks counted as skipped, never failing the run.
struct BuildCorpusOptions {
  std::filesystem::path chunks_path;
  std::filesystem::path audio_dir;
  corpus::EndpointProvider* endpoint = nullptr;      // required
  corpus::ReplacementProvider* replacer = nullptr;   // optional
  // uri -> [[start_s, end_s], ...]; single-source files may use a bare array.
  std::optional<std::filesystem::path> nonspeech_zones;
  double fuzzy_threshold = 0.6;
  double tail_s = 5.0;
  double split_ratio = 0.9;
  uint64_t master_seed = 20260101;
  int jobs = 1;  // bounded in-flight endpoint requests
};

struct BuildCorpusResult {
  std::vector<corpus::ManifestEntry> entries;
  corpus::ManifestSummary summary;
};

BuildCorpusResult build_corpus(const BuildCorpusOptions& opts);

/// Batch augmentation: draws `count` speech-bearing source entries from the
/// manifest (uniformly, with replacement), applies a seeded recipe to each,
/// and writes "<chunk_id>_aug<k>.wav" files plus manifest entries with the
/// recipe embedded. Output bytes depend only on (inputs, seed), never on
/// jobs or scheduling.
struct AugmentBatchOptions {
  std::filesystem::path manifest_in;
  std::filesystem::path audio_dir;
  std::filesystem::path out_dir;
  std::size_t count = 0;
  uint64_t master_seed = 20260101;
  augment::AugmentRanges ranges;
  double split_ratio = 0.9;
  // Optional background-noise stage between the effect and the final
  // normalization: WAVs from noise_dir, or shaped synthetic noise when the
  // directory is absent, at an SNR drawn uniformly from [snr_lo, snr_hi].
  bool background_noise = false;
  std::optional<std::filesystem::path> noise_dir;
  double snr_lo_db = 10.0;
  double snr_hi_db = 25.0;
  audio::WavEncoding encoding = audio::WavEncoding::Pcm16;
  int jobs = 1;
};

struct AugmentBatchResult {
  std::vector<corpus::ManifestEntry> entries;
  std::size_t covered_mic = 0;
  std::size_t underwater = 0;
};

AugmentBatchResult augment_batch(const AugmentBatchOptions& opts);

}  // namespace shobdosetu::pipeline
