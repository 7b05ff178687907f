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
#include <string_view>

#include <json.hpp>

#include "shobdosetu/audio_clip.hpp"
#include "shobdosetu/stft.hpp"

namespace shobdosetu::augment {

/// Covered-microphone ("muffled") degradation. Spectral low-pass with a
/// body-contact low-frequency shelf, a fixed-period spectral ripple, a bed
/// of matching shaped noise, and a tanh saturation stage.
struct CoveredMicParams {
  double fc_hz = 1200.0;            // low-pass cutoff, sampled in [600, 2000]
  double slope_p = 6.0;             // low-pass slope, sampled in [4, 10]
  double lf_boost_db = 4.0;         // shelf below 240 Hz, sampled in [0, 8]
  double ripple_period_hz = 850.0;
  double ripple_depth = 0.15;
  double noise_level_dbfs = -41.0;  // sampled in [-48, -35]; -inf disables
  double clip_drive = 1.8;
};

/// Underwater degradation: steep low-pass plus a mid-frequency scoop and a
/// slow amplitude wobble.
struct UnderwaterParams {
  double fc_hz = 1000.0;        // sampled in [800, 1200]
  double slope_p = 8.0;
  double scoop_db = -9.0;       // sampled in [-14, -4]
  double scoop_center_hz = 1500.0;
  double scoop_q = 2.2;
  double wobble_hz = 0.35;
  double wobble_depth = 0.3;
};

/// Contiguous region of the clip that receives the degradation. Length is
/// 5-10 s for clips of at least 5 s, otherwise the whole clip.
struct DegradedZone {
  double start_s = 0.0;
  double end_s = 0.0;
  double length_s() const { return end_s - start_s; }
};

enum class EffectKind { CoveredMic, Underwater };

/// Fully resolved degradation plan. Reproducing the recipe from
/// (seed, clip duration) via sample_recipe yields the identical struct.
struct AugmentRecipe {
  EffectKind effect = EffectKind::CoveredMic;
  CoveredMicParams covered;      // meaningful when effect == CoveredMic
  UnderwaterParams underwater;   // meaningful when effect == Underwater
  DegradedZone zone;
  uint64_t seed = 0;
  double crossfade_s = 0.05;
};

void to_json(nlohmann::json& j, const AugmentRecipe& r);
void from_json(const nlohmann::json& j, AugmentRecipe& r);

/// Sampling ranges for sample_recipe. Defaults carry the published effect
/// parameter bounds; depth-style knobs default to fixed values and can be
/// widened per run.
struct AugmentRanges {
  double cm_fc_lo = 600.0, cm_fc_hi = 2000.0;
  double cm_slope_lo = 4.0, cm_slope_hi = 10.0;
  double cm_lf_boost_lo = 0.0, cm_lf_boost_hi = 8.0;
  double cm_ripple_period_hz = 850.0;
  double cm_ripple_depth_lo = 0.15, cm_ripple_depth_hi = 0.15;
  double cm_noise_lo_dbfs = -48.0, cm_noise_hi_dbfs = -35.0;
  double cm_clip_drive = 1.8;

  double uw_fc_lo = 800.0, uw_fc_hi = 1200.0;
  double uw_slope = 8.0;
  double uw_scoop_lo_db = -14.0, uw_scoop_hi_db = -4.0;
  double uw_scoop_center_hz = 1500.0;
  double uw_scoop_q = 2.2;
  double uw_wobble_hz = 0.35;
  double uw_wobble_depth_lo = 0.3, uw_wobble_depth_hi = 0.3;

  double zone_min_s = 5.0, zone_max_s = 10.0;
  double crossfade_s = 0.05;
};

/// Draws a fully resolved recipe from a PRNG seeded with
/// seeded_hash(master_seed, item_id). Effect kind is a fair coin; parameters
/// are uniform in their ranges; the zone is uniform-length in
/// [zone_min, min(zone_max, duration)] at a uniform feasible start. Clips
/// shorter than zone_min get the whole clip as zone.
AugmentRecipe sample_recipe(uint64_t master_seed, std::string_view item_id,
                            double clip_duration_s,
                            const AugmentRanges& ranges = {});

/// Per-bin magnitude gain G(f) = 1 / (1 + (f/fc)^p).
double lowpass_gain(double f_hz, double fc_hz, double slope_p);

/// White Gaussian noise shaped by the lowpass_gain curve, peak-normalized to
/// level_dbfs. Deterministic per seed.
audio::AudioClip shaped_noise(std::size_t n_samples, int sample_rate_hz, double fc_hz,
                       double slope_p, double level_dbfs, uint64_t seed);

/// out[i] = tanh(drive * in[i]).
audio::AudioClip soft_clip(const audio::AudioClip& clip, double drive);

/// Applies the covered-mic chain to the zone (STFT shaping, noise bed, soft
/// clip) with a linear crossfade of crossfade_s at both zone edges. Samples
/// strictly outside zone +/- crossfade are bit-identical to the input.
audio::AudioClip apply_covered_mic(const audio::AudioClip& clip, const CoveredMicParams& p,
                            const DegradedZone& zone, uint64_t seed,
                            double crossfade_s = 0.05,
                            int fft_size = audio::kDefaultFftSize,
                            int hop = audio::kDefaultHop);

/// Underwater counterpart: low-pass + scoop in the STFT domain, then the
/// time-domain wobble m(t) = 1 - depth * (0.5 + 0.5*sin(2*pi*wobble_hz*t))
/// with t measured from the zone start. Same crossfade contract.
audio::AudioClip apply_underwater(const audio::AudioClip& clip, const UnderwaterParams& p,
                           const DegradedZone& zone, uint64_t seed,
                           double crossfade_s = 0.05,
                           int fft_size = audio::kDefaultFftSize,
                           int hop = audio::kDefaultHop);

/// Scales the noise so RMS(clip) / RMS(looped, scaled noise) = 10^(snr/20),
/// then sums. The RMS is taken over exactly the looped samples mixed in.
audio::AudioClip mix_background_noise(const audio::AudioClip& clip, const audio::AudioClip& noise,
                               double snr_db);

/// Runs the recipe's effect on its zone, then peak-normalizes to -1 dBFS.
audio::AudioClip augment_chunk(const audio::AudioClip& clip, const AugmentRecipe& recipe);

inline constexpr double kOutputPeakDbfs = -1.0;

}  // namespace shobdosetu::augment
