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

#include "shobdosetu/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "shobdosetu/errors.hpp"
#include "shobdosetu/hash.hpp"
#include "shobdosetu/rng.hpp"
#include "shobdosetu/text.hpp"

namespace shobdosetu::pipeline {

namespace {

namespace fs = std::filesystem;

// Runs fn(0..n-1) on up to `jobs` workers; the first exception wins and is
// rethrown on the caller thread after all workers drain.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<fs::path> list_chunk_files(const fs::path& chunks_path) {
  if (fs::is_directory(chunks_path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(chunks_path)) {
      if (e.is_regular_file() && e.path().extension() == ".json") {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      raise(Errc::NotFound, "no .json chunk files in " + chunks_path.string());
    }
    return files;
  }
  if (!fs::exists(chunks_path)) {
    raise(Errc::NotFound, "chunk input " + chunks_path.string());
  }
  return {chunks_path};
}

using ZoneList = std::vector<std::pair<double, double>>;

std::unordered_map<std::string, ZoneList> load_zones(const fs::path& path,
                                                     ZoneList* for_all) {
  std::ifstream in(path);
  if (!in) raise(Errc::NotFound, "cannot open zones " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) raise(Errc::MalformedDocument, "zones file is not valid JSON");

  auto parse_list = [](const nlohmann::json& arr) {
    ZoneList zones;
    for (const auto& z : arr) {
      if (!z.is_array() || z.size() != 2) {
        raise(Errc::MalformedDocument, "zone entries must be [start, end]");
      }
      zones.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    std::sort(zones.begin(), zones.end());
    return zones;
  };

  std::unordered_map<std::string, ZoneList> by_source;
  if (j.is_array()) {
    *for_all = parse_list(j);
  } else if (j.is_object()) {
    for (const auto& [source, arr] : j.items()) by_source[source] = parse_list(arr);
  } else {
    raise(Errc::MalformedDocument, "zones must be an object or array");
  }
  return by_source;
}

nlohmann::json parse_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::NotFound, "cannot open " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    raise(Errc::MalformedDocument, path.string() + " is not valid JSON");
  }
  return j;
}

}  // namespace

BuildCorpusResult build_corpus(const BuildCorpusOptions& opts) {
  if (!opts.endpoint) raise(Errc::BadConfig, "build_corpus needs an endpoint provider");

  BuildCorpusResult result;
  ZoneList zones_for_all;
  std::unordered_map<std::string, ZoneList> zones_by_source;
  if (opts.nonspeech_zones) {
    zones_by_source = load_zones(*opts.nonspeech_zones, &zones_for_all);
  }

  for (const fs::path& chunk_file : list_chunk_files(opts.chunks_path)) {
    const std::string source_id = chunk_file.stem().string();
    std::vector<corpus::SubtitleChunk> chunks =
        corpus::parse_chunks(parse_json_file(chunk_file), source_id);

    audio::AudioClip source_audio;
    const fs::path wav_path = opts.audio_dir / (source_id + ".wav");
    try {
      source_audio = audio::read_wav(wav_path);
    } catch (const Error& e) {
      if (e.code() == Errc::NotFound) {
        std::cerr << "skipping " << source_id << ": " << e.what() << "\n";
        result.summary.skipped += chunks.size();
        continue;
      }
      throw;
    }

    // Chunks outside the recording cannot be validated or sliced; skip them.
    {
      std::vector<corpus::SubtitleChunk> in_range;
      for (auto& c : chunks) {
        if (c.end_s() <= source_audio.duration_s() + 1e-9) {
          in_range.push_back(std::move(c));
        } else {
          ++result.summary.skipped;
        }
      }
      chunks.swap(in_range);
    }

    // Language filter, with Devanagari replacement when a provider is given.
    {
      std::vector<corpus::SubtitleChunk> surviving;
      for (auto& c : chunks) {
        if (!c.text) {
          surviving.push_back(std::move(c));
          continue;
        }
        const corpus::FilterDecision fd = corpus::filter_language(c);
        if (fd.kind == corpus::FilterDecision::Kind::Drop) {
          ++result.summary.dropped;
          continue;
        }
        if (fd.kind == corpus::FilterDecision::Kind::NeedsReplacement) {
          std::vector<std::string> tokens = text::tokenize(*c.text);
          // TODO: fan these out like the endpoint predictions below if a
          // remote replacement provider ever becomes the common path.
          std::vector<std::string> words =
              opts.replacer ? opts.replacer->replacements(c.chunk_id, tokens,
                                                          fd.positions)
                            : std::vector<std::string>{};
          if (words.size() != fd.positions.size()) {
            // No usable replacement: the chunk keeps offending tokens and is
            // dropped, mirroring the drop rule for other scripts.
            ++result.summary.dropped;
            continue;
          }
          for (std::size_t k = 0; k < fd.positions.size(); ++k) {
            tokens[fd.positions[k]] = words[k];
          }
          std::string joined;
          for (std::size_t k = 0; k < tokens.size(); ++k) {
            if (k) joined += ' ';
            joined += tokens[k];
          }
          c.text = joined;
          ++result.summary.replaced;
        }
        surviving.push_back(std::move(c));
      }
      chunks.swap(surviving);
    }

    // Boundary validation: predictions fan out (bounded), decisions are
    // sequential per adjacent pair.
    std::vector<corpus::BoundaryDecision> decisions(
        chunks.empty() ? 0 : chunks.size() - 1);
    std::vector<std::size_t> needs_prediction;
    for (std::size_t i = 0; i + 1 < chunks.size(); ++i) {
      if (chunks[i].text && !text::tokenize(*chunks[i].text).empty()) {
        needs_prediction.push_back(i);
      } else {
        decisions[i].chunk_id = chunks[i].chunk_id;
        decisions[i].action.kind = corpus::BoundaryAction::Kind::KeepBoundary;
        decisions[i].ratio = 1.0;  // validation skipped for textless chunks
      }
    }
    std::vector<std::vector<std::string>> predictions(needs_prediction.size());
    parallel_for(needs_prediction.size(), opts.jobs, [&](std::size_t k) {
      const corpus::SubtitleChunk& c = chunks[needs_prediction[k]];
      predictions[k] =
          opts.endpoint->predict(c.chunk_id, corpus::audio_tail(source_audio, c, opts.tail_s));
    });
    for (std::size_t k = 0; k < needs_prediction.size(); ++k) {
      const std::size_t i = needs_prediction[k];
      const corpus::SubtitleChunk* next = i + 1 < chunks.size() ? &chunks[i + 1] : nullptr;
      decisions[i] = corpus::select_boundary(
          predictions[k], corpus::candidate_list(chunks[i], next),
          opts.fuzzy_threshold);
      decisions[i].chunk_id = chunks[i].chunk_id;
    }

    chunks = corpus::realign(std::move(chunks), decisions);

    const ZoneList* zones = &zones_for_all;
    if (auto it = zones_by_source.find(source_id); it != zones_by_source.end()) {
      zones = &it->second;
    }

    for (auto& c : chunks) {
      if (c.boundary_unvalidated) {
        ++result.summary.unvalidated;
        continue;
      }
      corpus::SubtitleChunk nulled = corpus::null_nonspeech(std::move(c), *zones);
      corpus::ManifestEntry entry;
      entry.chunk_id = nulled.chunk_id;
      entry.audio_path = source_id + ".wav";
      entry.offset_s = nulled.start_s;
      entry.duration_s = nulled.duration_s;
      entry.transcript = nulled.text;
      entry.augmented = false;
      entry.sample_rate_hz = source_audio.sample_rate_hz;
      if (!entry.transcript) ++result.summary.nonspeech;
      result.entries.push_back(std::move(entry));
    }
  }

  corpus::split_train_val(result.entries, opts.split_ratio, opts.master_seed);
  result.summary.kept = result.entries.size();
  for (const auto& e : result.entries) {
    if (e.split == corpus::Split::Train) {
      ++result.summary.train;
    } else {
      ++result.summary.val;
    }
  }
  return result;
}

namespace {

// Immutable once loaded; shared across augmentation workers.
class ClipCache {
 public:
  explicit ClipCache(fs::path root) : root_(std::move(root)) {}

  std::shared_ptr<const audio::AudioClip> get(const std::string& rel_path) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(rel_path);
    if (it != cache_.end()) return it->second;
    auto clip = std::make_shared<audio::AudioClip>(audio::read_wav(root_ / rel_path));
    cache_.emplace(rel_path, clip);
    return clip;
  }

 private:
  fs::path root_;
  std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const audio::AudioClip>> cache_;
};

std::vector<fs::path> list_noise_files(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) return files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".wav") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

AugmentBatchResult augment_batch(const AugmentBatchOptions& opts) {
  std::vector<corpus::ManifestEntry> sources = corpus::read_manifest(opts.manifest_in);
  std::vector<const corpus::ManifestEntry*> candidates;
  for (const auto& e : sources) {
    if (!e.augmented && e.transcript) candidates.push_back(&e);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const corpus::ManifestEntry* a, const corpus::ManifestEntry* b) {
              return a->chunk_id < b->chunk_id;
            });
  if (candidates.empty()) {
    raise(Errc::EmptyCorpus, "manifest has no augmentable entries");
  }

  // Uniform draws with replacement, fixed before any worker runs.
  std::vector<std::size_t> draws(opts.count);
  {
    Rng selector(seeded_hash(opts.master_seed, "augment-selection"));
    for (auto& d : draws) {
      d = static_cast<std::size_t>(selector.next_u64() % candidates.size());
    }
  }

  fs::create_directories(opts.out_dir);
  ClipCache cache(opts.audio_dir);

  const std::vector<fs::path> noise_files =
      opts.noise_dir ? list_noise_files(*opts.noise_dir) : std::vector<fs::path>{};

  AugmentBatchResult result;
  result.entries.assign(opts.count, {});
  std::atomic<std::size_t> covered{0}, underwater{0};

  parallel_for(opts.count, opts.jobs, [&](std::size_t k) {
    const corpus::ManifestEntry& src = *candidates[draws[k]];
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_aug%05zu", k);
    const std::string aug_id = src.chunk_id + suffix;

    auto source_clip = cache.get(src.audio_path);
    audio::AudioClip clip = audio::slice(*source_clip, src.offset_s,
                                         src.offset_s + src.duration_s);

    augment::AugmentRecipe recipe = augment::sample_recipe(
        opts.master_seed, aug_id, clip.duration_s(), opts.ranges);
    if (recipe.effect == augment::EffectKind::CoveredMic) {
      covered.fetch_add(1);
    } else {
      underwater.fetch_add(1);
    }

    audio::AudioClip degraded =
        recipe.effect == augment::EffectKind::CoveredMic
            ? augment::apply_covered_mic(clip, recipe.covered, recipe.zone,
                                         recipe.seed, recipe.crossfade_s)
            : augment::apply_underwater(clip, recipe.underwater, recipe.zone,
                                        recipe.seed, recipe.crossfade_s);

    if (opts.background_noise) {
      Rng bg(seeded_hash(recipe.seed, "bg"));
      const double snr_db = bg.uniform(opts.snr_lo_db, opts.snr_hi_db);
      audio::AudioClip noise;
      bool have_noise = false;
      if (!noise_files.empty()) {
        const std::size_t pick = static_cast<std::size_t>(
            bg.next_u64() % noise_files.size());
        audio::AudioClip candidate = audio::read_wav(noise_files[pick]);
        if (candidate.sample_rate_hz == clip.sample_rate_hz &&
            audio::peak_abs(candidate) > 0.0) {
          noise = std::move(candidate);
          have_noise = true;
        }
      }
      if (!have_noise) {
        // Broadband synthetic bed when no usable noise file exists.
        noise = augment::shaped_noise(degraded.samples.size(),
                                      clip.sample_rate_hz, 2000.0, 2.0, -20.0,
                                      seeded_hash(recipe.seed, "bg-synth"));
      }
      degraded = augment::mix_background_noise(degraded, noise, snr_db);
    }

    const audio::AudioClip out =
        audio::peak_normalize(degraded, augment::kOutputPeakDbfs).clip;

    const std::string wav_name = aug_id + ".wav";
    audio::write_wav(opts.out_dir / wav_name, out, opts.encoding);

    corpus::ManifestEntry entry;
    entry.chunk_id = aug_id;
    entry.audio_path = wav_name;
    entry.offset_s = 0.0;
    entry.duration_s = out.duration_s();
    entry.transcript = src.transcript;
    entry.split = corpus::assign_split(opts.master_seed, aug_id, opts.split_ratio);
    entry.augmented = true;
    entry.recipe = recipe;
    entry.sample_rate_hz = out.sample_rate_hz;
    result.entries[k] = std::move(entry);
  });

  result.covered_mic = covered.load();
  result.underwater = underwater.load();
  return result;
}

}  // namespace shobdosetu::pipeline
