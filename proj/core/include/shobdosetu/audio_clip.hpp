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

#include <cstddef>
#include <vector>

namespace shobdosetu::audio {

/// Mono sample buffer. Samples are dimensionless amplitudes, nominally in
/// [-1, 1]. Value-semantic and safe to hand between worker threads.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  double duration_s() const {
    return sample_rate_hz > 0
               ? static_cast<double>(samples.size()) / sample_rate_hz
               : 0.0;
  }
  bool empty() const { return samples.empty(); }
};

double peak_abs(const AudioClip& clip);
double rms(const AudioClip& clip);

// 10^(db/20); -inf maps to exactly 0 ("off").
double db_to_gain(double db);
double gain_to_db(double gain);

struct NormalizeResult {
  AudioClip clip;
  bool silent_input = false;  // all-zero input is returned unchanged
};

/// Scales the clip so that max |sample| = 10^(target_dbfs / 20).
NormalizeResult peak_normalize(const AudioClip& clip, double target_dbfs);

/// out[i] = primary[i] + 10^(gain_db/20) * secondary[i mod len(secondary)].
/// The secondary clip is looped (or truncated) to the primary's length.
/// gain_db of -infinity leaves the primary unchanged.
AudioClip mix(const AudioClip& primary, const AudioClip& secondary,
              double gain_db);

/// Extracts samples [start_s, end_s) as a new clip.
AudioClip slice(const AudioClip& clip, double start_s, double end_s);

}  // namespace shobdosetu::audio
