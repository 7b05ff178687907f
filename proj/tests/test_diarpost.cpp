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

#include "oracles.hpp"
#include "shobdosetu/der.hpp"
#include "shobdosetu/diarpost.hpp"
#include "shobdosetu/errors.hpp"
#include "shobdosetu/rng.hpp"

using namespace shobdosetu;
using metrics::Annotation;

namespace {

Annotation ann(const std::string& uri,
               std::vector<metrics::SpeakerSegment> segments) {
  Annotation a;
  a.uri = uri;
  a.segments = std::move(segments);
  return a;
}

bool same(const Annotation& a, const Annotation& b) {
  if (a.segments.size() != b.segments.size()) return false;
  for (std::size_t i = 0; i < a.segments.size(); ++i) {
    if (metrics::to_ms(a.segments[i].start_s) != metrics::to_ms(b.segments[i].start_s) ||
        metrics::to_ms(a.segments[i].end_s) != metrics::to_ms(b.segments[i].end_s) ||
        a.segments[i].speaker != b.segments[i].speaker) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("merge_segments fixtures") {
  SUBCASE("gap below the threshold merges") {
    Annotation a = diarpost::merge_segments(
        ann("u", {{0.0, 1.0, "A"}, {1.2, 2.0, "A"}}), 0.3);
    REQUIRE(a.segments.size() == 1);
    CHECK(a.segments[0].start_s == doctest::Approx(0.0));
    CHECK(a.segments[0].end_s == doctest::Approx(2.0));
  }
  SUBCASE("different speakers never merge") {
    Annotation a = diarpost::merge_segments(
        ann("u", {{0.0, 1.0, "A"}, {1.1, 2.0, "B"}}), 100.0);
    CHECK(a.segments.size() == 2);
  }
  SUBCASE("gap exactly at the threshold does not merge") {
    Annotation a = diarpost::merge_segments(
        ann("u", {{0.0, 1.0, "A"}, {1.2, 2.0, "A"}}), 0.2);
    CHECK(a.segments.size() == 2);
  }
  SUBCASE("chains merge transitively") {
    Annotation a = diarpost::merge_segments(
        ann("u", {{0.0, 1.0, "A"}, {1.1, 2.0, "A"}, {2.1, 3.0, "A"}}), 0.2);
    REQUIRE(a.segments.size() == 1);
    CHECK(a.segments[0].end_s == doctest::Approx(3.0));
  }
}

TEST_CASE("merge_segments properties") {
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    Annotation a = oracles::random_annotation(rng, "u", 4, 10, 20.0);
    const double thr_small = rng.uniform(0.0, 0.5);
    const double thr_large = thr_small + rng.uniform(0.0, 1.0);
    Annotation m_small = diarpost::merge_segments(a, thr_small);
    Annotation m_large = diarpost::merge_segments(a, thr_large);

    // Total per-speaker speech never decreases.
    CHECK(metrics::total_speech_s(m_small) >=
          metrics::total_speech_s(metrics::canonicalized(a)) - 1e-9);
    // Monotone: the larger threshold's timeline contains the smaller's.
    for (const auto& seg : m_small.segments) {
      bool contained = false;
      for (const auto& big : m_large.segments) {
        if (big.speaker == seg.speaker && big.start_s <= seg.start_s + 1e-9 &&
            seg.end_s <= big.end_s + 1e-9) {
          contained = true;
          break;
        }
      }
      CHECK(contained);
    }
  }
}

TEST_CASE("round_boundaries fixtures") {
  SUBCASE("1.234 rounds down to 1.2 at 0.1") {
    Annotation a = diarpost::round_boundaries(ann("u", {{1.234, 3.0, "A"}}), 0.1);
    CHECK(a.segments[0].start_s == doctest::Approx(1.2));
  }
  SUBCASE("1.25 rounds half away from zero to 1.3") {
    Annotation a = diarpost::round_boundaries(ann("u", {{1.25, 3.0, "A"}}), 0.1);
    CHECK(a.segments[0].start_s == doctest::Approx(1.3));
  }
  SUBCASE("segments collapsing to zero length are dropped") {
    Annotation a = diarpost::round_boundaries(ann("u", {{1.02, 1.04, "A"}}), 0.1);
    CHECK(a.segments.empty());
  }
  SUBCASE("granularity 0 is the identity") {
    Annotation in = ann("u", {{1.234, 3.456, "A"}});
    Annotation a = diarpost::round_boundaries(in, 0.0);
    CHECK(same(a, metrics::canonicalized(in)));
  }
}

TEST_CASE("apply_post") {
  SUBCASE("all-zero params only canonicalize") {
    Annotation in = ann("u", {{5.0, 6.0, "B"}, {0.0, 1.0, "A"}});
    Annotation out = diarpost::apply_post(in, {});
    CHECK(same(out, metrics::canonicalized(in)));
  }
  SUBCASE("min_segment drops short segments after merging") {
    diarpost::PostParams p;
    p.min_segment_s = 0.5;
    Annotation out =
        diarpost::apply_post(ann("u", {{0.0, 0.2, "A"}, {1.0, 3.0, "B"}}), p);
    REQUIRE(out.segments.size() == 1);
    CHECK(out.segments[0].speaker == "B");
  }
  SUBCASE("merge-then-round differs from round-then-merge") {
    // Gap 0.26 < 0.3 merges first; rounding first would widen it to 0.5.
    Annotation in = ann("u", {{0.0, 1.04, "A"}, {1.3, 2.0, "A"}});
    diarpost::PostParams p;
    p.min_duration_off_s = 0.3;
    p.round_granularity_s = 0.5;
    Annotation ours = diarpost::apply_post(in, p);
    REQUIRE(ours.segments.size() == 1);  // merged into one span

    Annotation other_order =
        diarpost::merge_segments(diarpost::round_boundaries(in, 0.5), 0.3);
    CHECK(other_order.segments.size() == 2);
  }
  SUBCASE("idempotent on random annotations and params") {
    Rng rng(72);
    for (int trial = 0; trial < 300; ++trial) {
      Annotation a = oracles::random_annotation(rng, "u", 4, 10, 20.0);
      diarpost::PostParams p;
      p.min_duration_off_s = rng.uniform(0.0, 1.0);
      p.round_granularity_s =
          (rng.next_u64() % 3 == 0) ? 0.0 : rng.uniform(0.05, 0.6);
      p.min_segment_s = rng.uniform(0.0, 0.4);
      Annotation once = diarpost::apply_post(a, p);
      Annotation twice = diarpost::apply_post(once, p);
      CHECK(same(once, twice));
    }
  }
  SUBCASE("output is always canonical") {
    Rng rng(73);
    for (int trial = 0; trial < 100; ++trial) {
      Annotation a = oracles::random_annotation(rng, "u", 3, 8, 15.0);
      diarpost::PostParams p;
      p.min_duration_off_s = rng.uniform(0.0, 0.8);
      p.round_granularity_s = rng.uniform(0.0, 0.5);
      Annotation out = diarpost::apply_post(a, p);
      CHECK(same(out, metrics::canonicalized(out)));
      for (const auto& seg : out.segments) CHECK(seg.end_s > seg.start_s);
    }
  }
}

TEST_CASE("grid_search") {
  SUBCASE("single zero point equals the plain pooled DER") {
    Annotation ref = ann("f1", {{0, 10, "A"}});
    Annotation hyp = ann("f1", {{0, 8, "X"}});
    diarpost::ParamGrid grid;
    grid.dims = {{diarpost::kDimMinDurationOff, {0.0}},
                 {diarpost::kDimRoundGranularity, {0.0}}};
    diarpost::GridResult r = diarpost::grid_search(grid, {hyp}, {ref});
    REQUIRE(r.table.size() == 1);
    CHECK(r.best_der == doctest::Approx(metrics::der(ref, hyp).der));
  }
  SUBCASE("the merge threshold that repairs a fragmented hyp wins") {
    Annotation ref = ann("f1", {{0.0, 10.0, "A"}});
    // The same timeline shattered with 0.2 s holes.
    Annotation frag = ann("f1", {{0.0, 2.0, "X"},
                                 {2.2, 4.0, "X"},
                                 {4.2, 6.0, "X"},
                                 {6.2, 8.0, "X"},
                                 {8.2, 10.0, "X"}});
    diarpost::ParamGrid grid;
    grid.dims = {{diarpost::kDimMinDurationOff, {0.0, 0.5}}};
    diarpost::GridResult r = diarpost::grid_search(grid, {frag}, {ref});
    CHECK(r.best_params.min_duration_off_s == 0.5);
    CHECK(r.best_der == doctest::Approx(0.0));
    CHECK(r.table.size() == 2);
  }
  SUBCASE("table length is the product of dimension sizes") {
    Annotation ref = ann("f1", {{0, 10, "A"}});
    Annotation hyp = ann("f1", {{0, 9, "X"}});
    diarpost::ParamGrid grid;
    grid.dims = {{diarpost::kDimMinDurationOff, {0.0, 0.1, 0.2}},
                 {diarpost::kDimRoundGranularity, {0.0, 0.5}},
                 {"clustering_threshold", {0.5, 0.6}}};  // opaque dimension
    diarpost::GridResult r = diarpost::grid_search(grid, {hyp}, {ref});
    CHECK(r.table.size() == 12);
    CHECK(r.table[0].first.count("clustering_threshold") == 1);
  }
  SUBCASE("results are identical with multiple workers") {
    Rng rng(74);
    Annotation ref = oracles::random_annotation(rng, "f1", 3, 10, 20.0);
    Annotation hyp = oracles::random_annotation(rng, "f1", 3, 10, 20.0);
    diarpost::ParamGrid grid;
    grid.dims = {{diarpost::kDimMinDurationOff, {0.0, 0.2, 0.4, 0.6}},
                 {diarpost::kDimRoundGranularity, {0.0, 0.25}},
                 {diarpost::kDimMinSegment, {0.0, 0.3}}};
    diarpost::GridResult serial = diarpost::grid_search(grid, {hyp}, {ref}, 0.0, 1);
    diarpost::GridResult parallel = diarpost::grid_search(grid, {hyp}, {ref}, 0.0, 4);
    CHECK(serial.best_index == parallel.best_index);
    CHECK(serial.best_der == parallel.best_der);
    REQUIRE(serial.table.size() == parallel.table.size());
    for (std::size_t i = 0; i < serial.table.size(); ++i) {
      CHECK(serial.table[i].second == parallel.table[i].second);
    }
  }
  SUBCASE("unpaired recordings throw") {
    diarpost::ParamGrid grid;
    grid.dims = {{diarpost::kDimMinDurationOff, {0.0}}};
    CHECK_THROWS_AS(diarpost::grid_search(grid, {ann("f1", {{0, 1, "X"}})},
                                          {ann("f2", {{0, 1, "A"}})}),
                    Error);
  }
}

TEST_CASE("grid_search equals an independent exhaustive loop") {
  Rng rng(75);
  std::vector<Annotation> refs, hyps;
  for (int i = 0; i < 3; ++i) {
    refs.push_back(oracles::random_annotation(rng, "f" + std::to_string(i), 3, 8, 15.0));
    hyps.push_back(oracles::random_annotation(rng, "f" + std::to_string(i), 3, 8, 15.0));
  }
  diarpost::ParamGrid grid;
  grid.dims = {{diarpost::kDimMinDurationOff, {0.0, 0.25, 0.5}},
               {diarpost::kDimRoundGranularity, {0.0, 0.1, 0.3, 0.5}},
               {diarpost::kDimMinSegment, {0.0, 0.2}}};

  diarpost::GridResult got = diarpost::grid_search(grid, hyps, refs);

  // Independent loop, nesting written out by hand.
  double best = 1e300;
  std::size_t best_idx = 0, idx = 0;
  for (double m : grid.dims[0].second) {
    for (double g : grid.dims[1].second) {
      for (double s : grid.dims[2].second) {
        diarpost::PostParams p{m, g, s};
        std::vector<Annotation> processed;
        for (const auto& h : hyps) processed.push_back(diarpost::apply_post(h, p));
        const double der = metrics::der_pooled(refs, processed).der;
        CHECK(got.table[idx].second == der);
        if (der < best) {
          best = der;
          best_idx = idx;
        }
        ++idx;
      }
    }
  }
  CHECK(got.best_der == best);
  CHECK(got.best_index == best_idx);
}
