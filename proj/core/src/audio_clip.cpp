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

#include "shobdosetu/audio_clip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shobdosetu/errors.hpp"

namespace shobdosetu::audio {

double peak_abs(const AudioClip& clip) {
  double peak = 0.0;
  for (double s : clip.samples) peak = std::max(peak, std::fabs(s));
  return peak;
}

double rms(const AudioClip& clip) {
  if (clip.samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : clip.samples) acc += s * s;
  return std::sqrt(acc / static_cast<double>(clip.samples.size()));
}

double db_to_gain(double db) {
  if (std::isinf(db) && db < 0) return 0.0;
  return std::pow(10.0, db / 20.0);
}

double gain_to_db(double gain) {
  if (gain <= 0.0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(gain);
}

NormalizeResult peak_normalize(const AudioClip& clip, double target_dbfs) {
  NormalizeResult result{clip, false};
  const double peak = peak_abs(clip);
  if (peak == 0.0) {
    result.silent_input = true;
    return result;
  }
  const double scale = db_to_gain(target_dbfs) / peak;
  for (double& s : result.clip.samples) s *= scale;
  return result;
}

AudioClip mix(const AudioClip& primary, const AudioClip& secondary,
              double gain_db) {
  if (primary.sample_rate_hz != secondary.sample_rate_hz) {
    raise(Errc::RateMismatch, "mix: sample rates differ");
  }
  AudioClip out = primary;
  if (std::isinf(gain_db) && gain_db < 0) return out;  // "off"
  if (secondary.samples.empty()) return out;
  const double gain = db_to_gain(gain_db);
  const std::size_t n = secondary.samples.size();
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] += gain * secondary.samples[i % n];
  }
  return out;
}

AudioClip slice(const AudioClip& clip, double start_s, double end_s) {
  const auto len = static_cast<long long>(clip.samples.size());
  long long i0 = std::llround(start_s * clip.sample_rate_hz);
  long long i1 = std::llround(end_s * clip.sample_rate_hz);
  if (i0 < 0 || i1 < i0 || i1 > len) {
    raise(Errc::OutOfRange, "slice: interval outside clip");
  }
  AudioClip out;
  out.sample_rate_hz = clip.sample_rate_hz;
  out.samples.assign(clip.samples.begin() + i0, clip.samples.begin() + i1);
  return out;
}

}  // namespace shobdosetu::audio
