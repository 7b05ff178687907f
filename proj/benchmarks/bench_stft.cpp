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

#include <benchmark/benchmark.h>

#include "shobdosetu/augment.hpp"
#include "shobdosetu/rng.hpp"
#include "shobdosetu/stft.hpp"

using namespace shobdosetu;

namespace {

audio::AudioClip random_clip(std::size_t seconds) {
  Rng rng(7);
  audio::AudioClip c;
  c.sample_rate_hz = 16000;
  c.samples.resize(seconds * 16000);
  for (auto& s : c.samples) s = rng.uniform(-0.5, 0.5);
  return c;
}

void BM_StftRoundTrip(benchmark::State& state) {
  const audio::AudioClip clip = random_clip(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    audio::Spectrogram s = audio::stft(clip, 1024, 256);
    benchmark::DoNotOptimize(audio::istft(s, clip.samples.size()));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(clip.samples.size()));
}
BENCHMARK(BM_StftRoundTrip)->Arg(1)->Arg(10)->Arg(30);

void BM_CoveredMic(benchmark::State& state) {
  const audio::AudioClip clip = random_clip(12);
  const augment::AugmentRecipe recipe = augment::sample_recipe(1, "bench", 12.0);
  augment::CoveredMicParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        augment::apply_covered_mic(clip, params, {2.0, 9.0}, recipe.seed));
  }
}
BENCHMARK(BM_CoveredMic);

void BM_AugmentChunk(benchmark::State& state) {
  const audio::AudioClip clip = random_clip(12);
  const augment::AugmentRecipe recipe = augment::sample_recipe(1, "bench", 12.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(augment::augment_chunk(clip, recipe));
  }
}
BENCHMARK(BM_AugmentChunk);

}  // namespace
