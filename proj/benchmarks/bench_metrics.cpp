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

#include <string>
#include <vector>

#include "shobdosetu/der.hpp"
#include "shobdosetu/diarpost.hpp"
#include "shobdosetu/fuzzy.hpp"
#include "shobdosetu/metrics.hpp"
#include "shobdosetu/rng.hpp"

using namespace shobdosetu;

namespace {

std::vector<std::string> random_words(std::size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> out(n);
  for (auto& w : out) {
    w.resize(2 + rng.next_u64() % 6);
    for (auto& c : w) c = static_cast<char>('a' + rng.next_u64() % 12);
  }
  return out;
}

metrics::Annotation random_annotation(uint64_t seed, int speakers, int segments) {
  Rng rng(seed);
  metrics::Annotation ann;
  ann.uri = "bench";
  for (int i = 0; i < segments; ++i) {
    const double start = rng.uniform(0.0, 600.0);
    ann.segments.push_back({start, start + rng.uniform(0.3, 8.0),
                            "S" + std::to_string(rng.next_u64() %
                                                 static_cast<uint64_t>(speakers))});
  }
  return ann;
}

void BM_AlignTokens(benchmark::State& state) {
  const auto ref = random_words(static_cast<std::size_t>(state.range(0)), 1);
  auto hyp = ref;
  Rng rng(2);
  for (auto& w : hyp) {  // ~15% corruption
    if (rng.bernoulli(0.15)) w = "zq";
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::align_tokens(ref, hyp));
  }
}
BENCHMARK(BM_AlignTokens)->Arg(100)->Arg(1000);

void BM_SimilarityRatio(benchmark::State& state) {
  const std::string a = "transliteration";
  const std::string b = "transcription";
  for (auto _ : state) {
    benchmark::DoNotOptimize(fuzzy::similarity_ratio(a, b));
  }
}
BENCHMARK(BM_SimilarityRatio);

void BM_Der(benchmark::State& state) {
  const metrics::Annotation ref =
      random_annotation(3, 6, static_cast<int>(state.range(0)));
  const metrics::Annotation hyp =
      random_annotation(4, 6, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::der(ref, hyp));
  }
}
BENCHMARK(BM_Der)->Arg(50)->Arg(500);

void BM_ApplyPost(benchmark::State& state) {
  const metrics::Annotation ann = random_annotation(5, 6, 500);
  const diarpost::PostParams params{0.5, 0.25, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(diarpost::apply_post(ann, params));
  }
}
BENCHMARK(BM_ApplyPost);

}  // namespace
