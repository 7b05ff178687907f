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

#include "shobdosetu/diarpost.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "shobdosetu/der.hpp"
#include "shobdosetu/errors.hpp"

namespace shobdosetu::diarpost {

using metrics::Annotation;
using metrics::SpeakerSegment;
using metrics::to_ms;

namespace {

bool same_timeline(const Annotation& a, const Annotation& b) {
  if (a.segments.size() != b.segments.size()) return false;
  for (std::size_t i = 0; i < a.segments.size(); ++i) {
    if (to_ms(a.segments[i].start_s) != to_ms(b.segments[i].start_s) ||
        to_ms(a.segments[i].end_s) != to_ms(b.segments[i].end_s) ||
        a.segments[i].speaker != b.segments[i].speaker) {
      return false;
    }
  }
  return true;
}

Annotation drop_short(const Annotation& ann, double min_segment_s) {
  const int64_t min_ms = to_ms(min_segment_s);
  Annotation out;
  out.uri = ann.uri;
  for (const auto& seg : ann.segments) {
    if (to_ms(seg.end_s) - to_ms(seg.start_s) >= min_ms) out.segments.push_back(seg);
  }
  return out;
}

int64_t round_to_multiple(int64_t x_ms, int64_t g_ms) {
  // Half away from zero.
  const int64_t a = x_ms >= 0 ? x_ms : -x_ms;
  const int64_t r = a % g_ms;
  int64_t rounded = a - r;
  if (2 * r >= g_ms) rounded += g_ms;
  return x_ms >= 0 ? rounded : -rounded;
}

}  // namespace

Annotation merge_segments(const Annotation& ann, double min_duration_off_s) {
  const Annotation canon = metrics::canonicalized(ann);
  const int64_t threshold_ms = to_ms(min_duration_off_s);

  std::map<std::string, std::vector<std::pair<int64_t, int64_t>>> by_speaker;
  for (const auto& seg : canon.segments) {
    by_speaker[seg.speaker].emplace_back(to_ms(seg.start_s), to_ms(seg.end_s));
  }

  Annotation out;
  out.uri = ann.uri;
  for (auto& [speaker, ivals] : by_speaker) {
    // Canonical input is sorted with positive gaps; a left-to-right pass
    // that keeps extending the current run is already the fixpoint.
    std::vector<std::pair<int64_t, int64_t>> merged;
    for (const auto& iv : ivals) {
      if (!merged.empty() && iv.first - merged.back().second < threshold_ms) {
        merged.back().second = std::max(merged.back().second, iv.second);
      } else {
        merged.push_back(iv);
      }
    }
    for (const auto& [s, e] : merged) {
      out.segments.push_back({s / 1000.0, e / 1000.0, speaker});
    }
  }
  return metrics::canonicalized(out);
}

Annotation round_boundaries(const Annotation& ann, double granularity_s) {
  const int64_t g_ms = to_ms(granularity_s);
  if (g_ms <= 0) return metrics::canonicalized(ann);

  Annotation out;
  out.uri = ann.uri;
  for (const auto& seg : metrics::canonicalized(ann).segments) {
    const int64_t s = round_to_multiple(to_ms(seg.start_s), g_ms);
    const int64_t e = round_to_multiple(to_ms(seg.end_s), g_ms);
    if (e > s) out.segments.push_back({s / 1000.0, e / 1000.0, seg.speaker});
  }
  return metrics::canonicalized(out);
}

Annotation apply_post(const Annotation& ann, const PostParams& params) {
  Annotation cur = metrics::canonicalized(ann);
  // Rounding can reopen gaps below the merge threshold, so the chain is
  // iterated until it stabilizes; the result is a fixpoint and apply_post
  // is idempotent by construction. Each productive pass removes at least
  // one segment, so the loop is bounded by the segment count.
  for (std::size_t pass = 0; pass <= ann.segments.size() + 2; ++pass) {
    Annotation next = merge_segments(cur, params.min_duration_off_s);
    next = drop_short(next, params.min_segment_s);
    next = round_boundaries(next, params.round_granularity_s);
    next = metrics::canonicalized(next);
    if (same_timeline(next, cur)) break;
    cur = std::move(next);
  }
  return cur;
}

std::size_t ParamGrid::size() const {
  std::size_t n = 1;
  for (const auto& [name, values] : dims) n *= values.size();
  return n;
}

ParamGrid ParamGrid::from_json(const nlohmann::json& j) {
  if (!j.is_object()) raise(Errc::BadConfig, "grid must be a JSON object");
  ParamGrid grid;
  for (const auto& [name, values] : j.items()) {
    if (!values.is_array() || values.empty()) {
      raise(Errc::BadConfig, "grid dimension " + name + " must be a non-empty array");
    }
    std::vector<double> v;
    for (const auto& x : values) v.push_back(x.get<double>());
    grid.dims.emplace_back(name, std::move(v));
  }
  return grid;
}

namespace {

PostParams params_from_point(const ParamGrid& grid, const std::vector<std::size_t>& idx) {
  PostParams p;
  for (std::size_t d = 0; d < grid.dims.size(); ++d) {
    const auto& [name, values] = grid.dims[d];
    const double v = values[idx[d]];
    if (name == kDimMinDurationOff) {
      p.min_duration_off_s = v;
    } else if (name == kDimRoundGranularity) {
      p.round_granularity_s = v;
    } else if (name == kDimMinSegment) {
      p.min_segment_s = v;
    }
    // Unrecognized names parameterize external systems; enumerated only.
  }
  return p;
}

}  // namespace

nlohmann::json GridResult::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [point, der] : table) {
    rows.push_back({{"params", point}, {"der", der}});
  }
  return nlohmann::json{
      {"best_params",
       {{kDimMinDurationOff, best_params.min_duration_off_s},
        {kDimRoundGranularity, best_params.round_granularity_s},
        {kDimMinSegment, best_params.min_segment_s}}},
      {"best_der", best_der},
      {"best_index", best_index},
      {"table", rows},
  };
}

GridResult grid_search(const ParamGrid& grid,
                       const std::vector<Annotation>& hyps,
                       const std::vector<Annotation>& refs, double collar_s,
                       int jobs) {
  if (grid.dims.empty()) raise(Errc::BadConfig, "grid has no dimensions");
  for (const auto& [name, values] : grid.dims) {
    if (values.empty()) raise(Errc::BadConfig, "empty grid dimension " + name);
  }

  const std::size_t total = grid.size();
  const std::size_t n_dims = grid.dims.size();

  GridResult result;
  result.table.assign(total, {});

  auto evaluate = [&](std::size_t flat) {
    // Decode row-major: first dimension slowest.
    std::vector<std::size_t> idx(n_dims, 0);
    std::size_t rem = flat;
    for (std::size_t d = n_dims; d-- > 0;) {
      idx[d] = rem % grid.dims[d].second.size();
      rem /= grid.dims[d].second.size();
    }
    const PostParams params = params_from_point(grid, idx);

    std::vector<Annotation> processed;
    processed.reserve(hyps.size());
    for (const auto& h : hyps) processed.push_back(apply_post(h, params));
    const double pooled = metrics::der_pooled(refs, processed, collar_s).der;

    std::map<std::string, double> point;
    for (std::size_t d = 0; d < n_dims; ++d) {
      point[grid.dims[d].first] = grid.dims[d].second[idx[d]];
    }
    result.table[flat] = {std::move(point), pooled};
  };

  // Validate pairing once up front so UnpairedRecording surfaces before any
  // worker starts.
  metrics::der_pooled(refs, hyps, collar_s);

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = cursor.fetch_add(1); i < total; i = cursor.fetch_add(1)) {
          evaluate(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  result.best_index = 0;
  result.best_der = result.table.empty() ? 0.0 : result.table[0].second;
  for (std::size_t i = 1; i < total; ++i) {
    if (result.table[i].second < result.best_der) {
      result.best_der = result.table[i].second;
      result.best_index = i;
    }
  }
  {
    std::vector<std::size_t> idx(n_dims, 0);
    std::size_t rem = result.best_index;
    for (std::size_t d = n_dims; d-- > 0;) {
      idx[d] = rem % grid.dims[d].second.size();
      rem /= grid.dims[d].second.size();
    }
    result.best_params = params_from_point(grid, idx);
  }
  return result;
}

}  // namespace shobdosetu::diarpost
