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

#include "shobdosetu/der.hpp"

#include <algorithm>
#include <set>

#include "shobdosetu/assignment.hpp"
#include "shobdosetu/errors.hpp"

namespace shobdosetu::metrics {

namespace {

using MsInterval = std::pair<int64_t, int64_t>;

std::vector<std::string> speaker_labels(const Annotation& ann) {
  std::set<std::string> labels;
  for (const auto& seg : ann.segments) labels.insert(seg.speaker);
  return {labels.begin(), labels.end()};
}

std::vector<std::vector<MsInterval>> intervals_by_speaker(
    const Annotation& canonical, const std::vector<std::string>& labels) {
  std::vector<std::vector<MsInterval>> out(labels.size());
  for (const auto& seg : canonical.segments) {
    const auto it = std::lower_bound(labels.begin(), labels.end(), seg.speaker);
    const auto idx = static_cast<std::size_t>(it - labels.begin());
    out[idx].emplace_back(to_ms(seg.start_s), to_ms(seg.end_s));
  }
  return out;
}

int64_t overlap_ms(const std::vector<MsInterval>& a, const std::vector<MsInterval>& b) {
  int64_t total = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int64_t lo = std::max(a[i].first, b[j].first);
    const int64_t hi = std::min(a[i].second, b[j].second);
    if (hi > lo) total += hi - lo;
    if (a[i].second < b[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  return total;
}

struct OverlapMatrix {
  std::vector<std::string> ref_labels, hyp_labels;
  std::vector<std::vector<int64_t>> w;  // hyp x ref
};

OverlapMatrix build_overlap(const Annotation& ref_c, const Annotation& hyp_c) {
  OverlapMatrix m;
  m.ref_labels = speaker_labels(ref_c);
  m.hyp_labels = speaker_labels(hyp_c);
  const auto ref_iv = intervals_by_speaker(ref_c, m.ref_labels);
  const auto hyp_iv = intervals_by_speaker(hyp_c, m.hyp_labels);
  m.w.assign(m.hyp_labels.size(), std::vector<int64_t>(m.ref_labels.size(), 0));
  for (std::size_t h = 0; h < m.hyp_labels.size(); ++h) {
    for (std::size_t r = 0; r < m.ref_labels.size(); ++r) {
      m.w[h][r] = overlap_ms(hyp_iv[h], ref_iv[r]);
    }
  }
  return m;
}

std::vector<std::vector<int64_t>> submatrix(
    const std::vector<std::vector<int64_t>>& w, const std::vector<std::size_t>& rows,
    const std::vector<std::size_t>& cols) {
  std::vector<std::vector<int64_t>> sub(rows.size(), std::vector<int64_t>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) sub[i][j] = w[rows[i]][cols[j]];
  }
  return sub;
}

}  // namespace

SpeakerMapping optimal_mapping(const Annotation& ref, const Annotation& hyp) {
  const Annotation ref_c = canonicalized(ref);
  const Annotation hyp_c = canonicalized(hyp);
  const OverlapMatrix m = build_overlap(ref_c, hyp_c);

  SpeakerMapping mapping;
  if (m.hyp_labels.empty() || m.ref_labels.empty()) return mapping;

  const int64_t optimum = max_assignment(m.w).total;
  mapping.total_overlap_ms = optimum;

  // Lexicographic refinement: walk hyp labels in sorted order and commit the
  // smallest ref label (positive overlap only) that still attains the
  // optimum when the remainder is re-solved.
  std::vector<char> ref_used(m.ref_labels.size(), 0);
  std::vector<std::size_t> rest_rows(m.hyp_labels.size());
  for (std::size_t h = 0; h < m.hyp_labels.size(); ++h) rest_rows[h] = h;

  int64_t committed = 0;
  for (std::size_t h = 0; h < m.hyp_labels.size(); ++h) {
    rest_rows.erase(rest_rows.begin());  // rows h+1.. remain after this step
    for (std::size_t r = 0; r < m.ref_labels.size(); ++r) {
      if (ref_used[r] || m.w[h][r] <= 0) continue;
      std::vector<std::size_t> rest_cols;
      for (std::size_t c = 0; c < m.ref_labels.size(); ++c) {
        if (!ref_used[c] && c != r) rest_cols.push_back(c);
      }
      const int64_t rest =
          max_assignment(submatrix(m.w, rest_rows, rest_cols)).total;
      if (committed + m.w[h][r] + rest == optimum) {
        mapping.hyp_to_ref[m.hyp_labels[h]] = m.ref_labels[r];
        ref_used[r] = 1;
        committed += m.w[h][r];
        break;
      }
    }
  }
  return mapping;
}

namespace {

struct DerComponentsMs {
  int64_t fa = 0, miss = 0, conf = 0, total = 0;
};

DerComponentsMs der_components(const Annotation& ref_c, const Annotation& hyp_c,
                               const std::map<std::string, std::string>& hyp_to_ref,
                               double collar_s) {
  const std::vector<std::string> ref_labels = speaker_labels(ref_c);
  const std::vector<std::string> hyp_labels = speaker_labels(hyp_c);

  auto ref_index = [&](const std::string& s) {
    return static_cast<std::size_t>(
        std::lower_bound(ref_labels.begin(), ref_labels.end(), s) -
        ref_labels.begin());
  };
  auto hyp_index = [&](const std::string& s) {
    return static_cast<std::size_t>(
        std::lower_bound(hyp_labels.begin(), hyp_labels.end(), s) -
        hyp_labels.begin());
  };

  // mapped_ref[h] = ref index h maps to, or -1; mapped_hyp is the inverse.
  std::vector<int> mapped_ref(hyp_labels.size(), -1);
  std::vector<int> mapped_hyp(ref_labels.size(), -1);
  for (const auto& [h, r] : hyp_to_ref) {
    const std::size_t hi = hyp_index(h);
    const std::size_t ri = ref_index(r);
    if (hi < hyp_labels.size() && ri < ref_labels.size()) {
      mapped_ref[hi] = static_cast<int>(ri);
      mapped_hyp[ri] = static_cast<int>(hi);
    }
  }

  // Collar: excise +/- collar around every reference boundary from scoring.
  const int64_t collar = to_ms(collar_s);
  std::vector<MsInterval> excl;
  if (collar > 0) {
    for (const auto& seg : ref_c.segments) {
      excl.emplace_back(to_ms(seg.start_s) - collar, to_ms(seg.start_s) + collar);
      excl.emplace_back(to_ms(seg.end_s) - collar, to_ms(seg.end_s) + collar);
    }
    std::sort(excl.begin(), excl.end());
    std::vector<MsInterval> merged;
    for (const auto& iv : excl) {
      if (!merged.empty() && iv.first <= merged.back().second) {
        merged.back().second = std::max(merged.back().second, iv.second);
      } else {
        merged.push_back(iv);
      }
    }
    excl.swap(merged);
  }

  // Event sweep over all boundaries (segment edges + exclusion edges).
  struct Event {
    int64_t t;
    int kind;      // 0 = sentinel, +1 enter, -1 leave
    bool is_ref;
    std::size_t speaker;
  };
  std::vector<Event> events;
  for (const auto& seg : ref_c.segments) {
    const std::size_t idx = ref_index(seg.speaker);
    events.push_back({to_ms(seg.start_s), +1, true, idx});
    events.push_back({to_ms(seg.end_s), -1, true, idx});
  }
  for (const auto& seg : hyp_c.segments) {
    const std::size_t idx = hyp_index(seg.speaker);
    events.push_back({to_ms(seg.start_s), +1, false, idx});
    events.push_back({to_ms(seg.end_s), -1, false, idx});
  }
  for (const auto& iv : excl) {
    events.push_back({iv.first, 0, false, 0});
    events.push_back({iv.second, 0, false, 0});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.t < b.t; });

  std::vector<char> ref_active(ref_labels.size(), 0);
  std::vector<char> hyp_active(hyp_labels.size(), 0);
  int64_t n_ref = 0, n_hyp = 0, n_matched = 0;
  DerComponentsMs out;

  std::size_t excl_idx = 0;
  int64_t prev_t = events.empty() ? 0 : events.front().t;
  std::size_t i = 0;
  while (i < events.size()) {
    const int64_t t = events[i].t;
    const int64_t d = t - prev_t;
    if (d > 0) {
      while (excl_idx < excl.size() && excl[excl_idx].second <= prev_t) ++excl_idx;
      const bool excluded = excl_idx < excl.size() &&
                            excl[excl_idx].first <= prev_t &&
                            prev_t < excl[excl_idx].second;
      if (!excluded) {
        const int64_t matched = n_matched;
        out.miss += d * std::max<int64_t>(0, n_ref - n_hyp);
        out.fa += d * std::max<int64_t>(0, n_hyp - n_ref);
        out.conf += d * (std::min(n_ref, n_hyp) - matched);
        out.total += d * n_ref;
      }
    }
    // Apply every event at time t before sweeping further.
    for (; i < events.size() && events[i].t == t; ++i) {
      const Event& ev = events[i];
      if (ev.kind == 0) continue;
      if (ev.is_ref) {
        ref_active[ev.speaker] = ev.kind > 0;
        n_ref += ev.kind;
        const int h = mapped_hyp[ev.speaker];
        if (h >= 0 && hyp_active[static_cast<std::size_t>(h)]) n_matched += ev.kind;
      } else {
        hyp_active[ev.speaker] = ev.kind > 0;
        n_hyp += ev.kind;
        const int r = mapped_ref[ev.speaker];
        if (r >= 0 && ref_active[static_cast<std::size_t>(r)]) n_matched += ev.kind;
      }
    }
    prev_t = t;
  }
  return out;
}

DerReport report_from(const DerComponentsMs& c,
                      std::map<std::string, std::string> mapping) {
  if (c.total == 0) {
    raise(Errc::EmptyReference, "no scored reference speech");
  }
  DerReport r;
  r.fa_s = static_cast<double>(c.fa) / 1000.0;
  r.miss_s = static_cast<double>(c.miss) / 1000.0;
  r.conf_s = static_cast<double>(c.conf) / 1000.0;
  r.total_s = static_cast<double>(c.total) / 1000.0;
  r.der = static_cast<double>(c.fa + c.miss + c.conf) / static_cast<double>(c.total);
  r.mapping = std::move(mapping);
  return r;
}

}  // namespace

nlohmann::json DerReport::to_json() const {
  return nlohmann::json{
      {"der", der},         {"fa_s", fa_s},   {"miss_s", miss_s},
      {"conf_s", conf_s},   {"total_s", total_s},
      {"mapping", mapping},
  };
}

DerReport der(const Annotation& ref, const Annotation& hyp, double collar_s) {
  const Annotation ref_c = canonicalized(ref);
  const Annotation hyp_c = canonicalized(hyp);
  SpeakerMapping mapping = optimal_mapping(ref_c, hyp_c);
  const DerComponentsMs c =
      der_components(ref_c, hyp_c, mapping.hyp_to_ref, collar_s);
  return report_from(c, std::move(mapping.hyp_to_ref));
}

DerReport der_pooled(const std::vector<Annotation>& refs,
                     const std::vector<Annotation>& hyps, double collar_s) {
  auto by_uri = [](const std::vector<Annotation>& anns) {
    std::map<std::string, const Annotation*> m;
    for (const auto& a : anns) m[a.uri] = &a;
    return m;
  };
  const auto ref_map = by_uri(refs);
  const auto hyp_map = by_uri(hyps);
  if (ref_map.size() != refs.size() || hyp_map.size() != hyps.size()) {
    raise(Errc::UnpairedRecording, "duplicate uri in annotation set");
  }
  for (const auto& [uri, ann] : ref_map) {
    if (!hyp_map.count(uri)) raise(Errc::UnpairedRecording, "no hypothesis for " + uri);
  }
  for (const auto& [uri, ann] : hyp_map) {
    if (!ref_map.count(uri)) raise(Errc::UnpairedRecording, "no reference for " + uri);
  }

  DerComponentsMs pooled;
  for (const auto& [uri, ref_ann] : ref_map) {
    const Annotation ref_c = canonicalized(*ref_ann);
    const Annotation hyp_c = canonicalized(*hyp_map.at(uri));
    const SpeakerMapping m = optimal_mapping(ref_c, hyp_c);
    const DerComponentsMs c = der_components(ref_c, hyp_c, m.hyp_to_ref, collar_s);
    pooled.fa += c.fa;
    pooled.miss += c.miss;
    pooled.conf += c.conf;
    pooled.total += c.total;
  }
  return report_from(pooled, {});
}

}  // namespace shobdosetu::metrics
