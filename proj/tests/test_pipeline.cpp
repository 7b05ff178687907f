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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "shobdosetu/pipeline.hpp"
#include "shobdosetu/wav.hpp"

using namespace shobdosetu;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("shobdosetu-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  out << content;
}

void write_tone(const fs::path& path, double seconds, int rate = 16000) {
  audio::AudioClip c;
  c.sample_rate_hz = rate;
  c.samples.resize(static_cast<std::size_t>(seconds * rate));
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    c.samples[i] = 0.25 * std::sin(2.0 * 3.14159265358979 * 220.0 *
                                   static_cast<double>(i) / rate);
  }
  audio::write_wav(path, c, audio::WavEncoding::Pcm16);
}

// Three chunks; the predictions keep every boundary.
constexpr const char* kChunksJson = R"([
  {"start": 0.0, "duration": 6.0, "text": "ek dui tin char shesh"},
  {"start": 6.0, "duration": 6.0, "text": "panch chhoy saat"},
  {"start": 12.0, "duration": 6.0, "text": "aat noy dosh"}
])";

constexpr const char* kWordsJsonl =
    "{\"chunk_id\": \"src_0000\", \"words\": [\"shesh\"]}\n"
    "{\"chunk_id\": \"src_0001\", \"words\": [\"saat\"]}\n";

}  // namespace

TEST_CASE("build_corpus on a small fixture") {
  const fs::path dir = fresh_dir("pipeline-bc");
  fs::create_directories(dir / "audio");
  write_text(dir / "src.json", kChunksJson);
  write_tone(dir / "audio" / "src.wav", 18.0);
  write_text(dir / "words.jsonl", kWordsJsonl);

  auto endpoint = corpus::make_file_endpoint_provider(dir / "words.jsonl");
  pipeline::BuildCorpusOptions opts;
  opts.chunks_path = dir / "src.json";
  opts.audio_dir = dir / "audio";
  opts.endpoint = endpoint.get();
  opts.master_seed = 7;

  pipeline::BuildCorpusResult r = pipeline::build_corpus(opts);
  CHECK(r.summary.kept == 3);
  CHECK(r.summary.dropped == 0);
  CHECK(r.summary.unvalidated == 0);
  CHECK(r.summary.skipped == 0);
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[0].chunk_id == "src_0000");
  CHECK(r.entries[0].offset_s == 0.0);
  CHECK(r.entries[0].duration_s == 6.0);
  CHECK(*r.entries[0].transcript == "ek dui tin char shesh");
  CHECK(r.entries[0].sample_rate_hz == 16000);
  CHECK(r.entries[0].audio_path == "src.wav");

  SUBCASE("a chunk without an endpoint prediction is excluded as unvalidated") {
    write_text(dir / "missing.jsonl",
               "{\"chunk_id\": \"src_0001\", \"words\": [\"saat\"]}\n");
    auto sparse = corpus::make_file_endpoint_provider(dir / "missing.jsonl");
    opts.endpoint = sparse.get();
    pipeline::BuildCorpusResult r2 = pipeline::build_corpus(opts);
    CHECK(r2.summary.unvalidated == 1);  // src_0000 had no prediction
    CHECK(r2.summary.kept == 2);
  }
  SUBCASE("missing audio skips the whole source without failing") {
    pipeline::BuildCorpusOptions missing = opts;
    missing.audio_dir = dir;  // no src.wav here
    pipeline::BuildCorpusResult r2 = pipeline::build_corpus(missing);
    CHECK(r2.summary.skipped == 3);
    CHECK(r2.entries.empty());
  }
  SUBCASE("non-speech zones null transcripts") {
    write_text(dir / "zones.json", "{\"src\": [[6.0, 12.0]]}");
    pipeline::BuildCorpusOptions zoned = opts;
    zoned.nonspeech_zones = dir / "zones.json";
    pipeline::BuildCorpusResult r2 = pipeline::build_corpus(zoned);
    REQUIRE(r2.entries.size() == 3);
    CHECK(r2.entries[0].transcript.has_value());
    CHECK_FALSE(r2.entries[1].transcript.has_value());  // fully covered
    CHECK(r2.summary.nonspeech == 1);
  }
  SUBCASE("boundary pull moves text between entries") {
    // Predict the first word of the NEXT chunk for boundary 0.
    write_text(dir / "pull.jsonl",
               "{\"chunk_id\": \"src_0000\", \"words\": [\"panch\"]}\n"
               "{\"chunk_id\": \"src_0001\", \"words\": [\"saat\"]}\n");
    auto pull = corpus::make_file_endpoint_provider(dir / "pull.jsonl");
    opts.endpoint = pull.get();
    pipeline::BuildCorpusResult r2 = pipeline::build_corpus(opts);
    REQUIRE(r2.entries.size() == 3);
    CHECK(*r2.entries[0].transcript == "ek dui tin char shesh panch");
    CHECK(*r2.entries[1].transcript == "chhoy saat");
  }
}

TEST_CASE("augment_batch is deterministic and independent of jobs") {
  const fs::path dir = fresh_dir("pipeline-aug");
  fs::create_directories(dir / "audio");
  write_text(dir / "src.json", kChunksJson);
  write_tone(dir / "audio" / "src.wav", 18.0);
  write_text(dir / "words.jsonl", kWordsJsonl);

  auto endpoint = corpus::make_file_endpoint_provider(dir / "words.jsonl");
  pipeline::BuildCorpusOptions bopts;
  bopts.chunks_path = dir / "src.json";
  bopts.audio_dir = dir / "audio";
  bopts.endpoint = endpoint.get();
  pipeline::BuildCorpusResult built = pipeline::build_corpus(bopts);
  corpus::write_manifest(dir / "manifest.jsonl", built.entries);

  auto run = [&](const fs::path& out_dir, int jobs) {
    pipeline::AugmentBatchOptions opts;
    opts.manifest_in = dir / "manifest.jsonl";
    opts.audio_dir = dir / "audio";
    opts.out_dir = out_dir;
    opts.count = 6;
    opts.master_seed = 12345;
    opts.jobs = jobs;
    return pipeline::augment_batch(opts);
  };

  pipeline::AugmentBatchResult r1 = run(dir / "out1", 1);
  pipeline::AugmentBatchResult r2 = run(dir / "out2", 4);
  REQUIRE(r1.entries.size() == 6);
  CHECK(r1.covered_mic + r1.underwater == 6);
  CHECK(r1.covered_mic == r2.covered_mic);

  for (std::size_t i = 0; i < r1.entries.size(); ++i) {
    CHECK(r1.entries[i].chunk_id == r2.entries[i].chunk_id);
    CHECK(r1.entries[i].split == r2.entries[i].split);
    REQUIRE(r1.entries[i].recipe.has_value());
    CHECK(r1.entries[i].recipe->seed == r2.entries[i].recipe->seed);
    CHECK(r1.entries[i].augmented);

    std::ifstream a(dir / "out1" / r1.entries[i].audio_path, std::ios::binary);
    std::ifstream b(dir / "out2" / r2.entries[i].audio_path, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)),
                              std::istreambuf_iterator<char>());
    const std::string bytes_b((std::istreambuf_iterator<char>(b)),
                              std::istreambuf_iterator<char>());
    CHECK(bytes_a == bytes_b);
    CHECK_FALSE(bytes_a.empty());
  }

  SUBCASE("augmented output peaks at -1 dBFS") {
    for (const auto& e : r1.entries) {
      audio::AudioClip out = audio::read_wav(dir / "out1" / e.audio_path);
      CHECK(audio::peak_abs(out) == doctest::Approx(0.8913).epsilon(0.002));
    }
  }
}
