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

#include "shobdosetu/augment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "shobdosetu/errors.hpp"
#include "shobdosetu/hash.hpp"
#include "shobdosetu/rng.hpp"

namespace shobdosetu::augment {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;
constexpr double kLn2 = 0.69314718055994530941723212145817657;
constexpr double kShelfEdgeHz = 240.0;

struct ZoneSamples {
  std::size_t z0 = 0;  // zone start
  std::size_t z1 = 0;  // zone end (exclusive)
  std::size_t s0 = 0;  // processed segment start (zone - crossfade, clamped)
  std::size_t s1 = 0;  // processed segment end
  std::size_t xf = 0;  // crossfade length in samples
};

ZoneSamples resolve_zone(const audio::AudioClip& clip, const DegradedZone& zone,
                         double crossfade_s) {
  const std::size_t len = clip.samples.size();
  const int sr = clip.sample_rate_hz;
  if (zone.start_s < 0.0 || zone.end_s <= zone.start_s ||
      zone.end_s > clip.duration_s() + 1e-9) {
    raise(Errc::ZoneOutOfRange, "zone outside clip");
  }
  ZoneSamples z;
  z.z0 = static_cast<std::size_t>(std::llround(zone.start_s * sr));
  z.z1 = std::min<std::size_t>(
      static_cast<std::size_t>(std::llround(zone.end_s * sr)), len);
  z.xf = static_cast<std::size_t>(std::llround(crossfade_s * sr));
  z.s0 = z.z0 >= z.xf ? z.z0 - z.xf : 0;
  z.s1 = std::min(len, z.z1 + z.xf);
  if (z.z0 >= z.z1) raise(Errc::ZoneOutOfRange, "empty zone");
  return z;
}

// Wet weight for absolute sample index n: 1 inside the zone, linear ramps
// across the crossfade regions, 0 elsewhere. Weight 0 at the region edges
// keeps every sample outside zone +/- crossfade bit-identical to the input.
double wet_weight(std::size_t n, const ZoneSamples& z) {
  if (n >= z.z0 && n < z.z1) return 1.0;
  if (z.xf == 0) return 0.0;
  if (n < z.z0 && z.z0 - n < z.xf) {
    return static_cast<double>(z.xf - (z.z0 - n)) / static_cast<double>(z.xf);
  }
  if (n >= z.z1 && n - z.z1 < z.xf) {
    return static_cast<double>(z.xf - (n - z.z1)) / static_cast<double>(z.xf);
  }
  return 0.0;
}

// STFT the segment, scale each bin by gain(f), invert to the same length.
audio::AudioClip shape_spectrum(const audio::AudioClip& segment, int fft_size,
                                int hop, const std::function<double(double)>& gain) {
  audio::Spectrogram spec = audio::stft(segment, fft_size, hop);
  const std::size_t bins = spec.bins();
  std::vector<double> g(bins);
  for (std::size_t b = 0; b < bins; ++b) g[b] = gain(spec.bin_center_hz(b));
  for (std::size_t t = 0; t < spec.n_frames; ++t) {
    for (std::size_t b = 0; b < bins; ++b) spec.at(t, b) *= g[b];
  }
  return audio::istft(spec, segment.samples.size());
}

audio::AudioClip blend(const audio::AudioClip& dry, const audio::AudioClip& wet_segment,
                       const ZoneSamples& z) {
  audio::AudioClip out = dry;
  for (std::size_t n = z.s0; n < z.s1; ++n) {
    const double w = wet_weight(n, z);
    out.samples[n] = dry.samples[n] * (1.0 - w) + wet_segment.samples[n - z.s0] * w;
  }
  return out;
}

double shelf_gain(double f_hz, double lf_boost_db) {
  if (f_hz >= kShelfEdgeHz) return 1.0;
  const double full = audio::db_to_gain(lf_boost_db);
  return full + (1.0 - full) * (f_hz / kShelfEdgeHz);
}

double ripple_gain(double f_hz, double depth, double period_hz) {
  return std::max(0.0, 1.0 + depth * std::sin(kTwoPi * f_hz / period_hz));
}

double scoop_gain(double f_hz, double scoop_db, double center_hz, double q) {
  if (f_hz <= 0.0) return 1.0;
  const double x = std::log(f_hz / center_hz) * q / kLn2;
  return audio::db_to_gain(scoop_db * std::exp(-x * x));
}

}  // namespace

double lowpass_gain(double f_hz, double fc_hz, double slope_p) {
  return 1.0 / (1.0 + std::pow(f_hz / fc_hz, slope_p));
}

audio::AudioClip shaped_noise(std::size_t n_samples, int sample_rate_hz,
                              double fc_hz, double slope_p, double level_dbfs,
                              uint64_t seed) {
  audio::AudioClip noise;
  noise.sample_rate_hz = sample_rate_hz;
  noise.samples.resize(n_samples);
  Rng rng(seed);
  for (double& s : noise.samples) s = rng.normal();

  audio::AudioClip shaped = shape_spectrum(
      noise, audio::kDefaultFftSize, audio::kDefaultHop,
      [&](double f) { return lowpass_gain(f, fc_hz, slope_p); });

  auto norm = audio::peak_normalize(shaped, level_dbfs);
  return norm.clip;
}

audio::AudioClip soft_clip(const audio::AudioClip& clip, double drive) {
  audio::AudioClip out = clip;
  for (double& s : out.samples) s = std::tanh(drive * s);
  return out;
}

audio::AudioClip apply_covered_mic(const audio::AudioClip& clip,
                                   const CoveredMicParams& p,
                                   const DegradedZone& zone, uint64_t seed,
                                   double crossfade_s, int fft_size, int hop) {
  const ZoneSamples z = resolve_zone(clip, zone, crossfade_s);

  audio::AudioClip segment;
  segment.sample_rate_hz = clip.sample_rate_hz;
  segment.samples.assign(clip.samples.begin() + static_cast<long>(z.s0),
                         clip.samples.begin() + static_cast<long>(z.s1));

  audio::AudioClip wet = shape_spectrum(segment, fft_size, hop, [&](double f) {
    return lowpass_gain(f, p.fc_hz, p.slope_p) * shelf_gain(f, p.lf_boost_db) *
           ripple_gain(f, p.ripple_depth, p.ripple_period_hz);
  });

  const bool noise_on = !(std::isinf(p.noise_level_dbfs) && p.noise_level_dbfs < 0);
  if (noise_on) {
    audio::AudioClip bed =
        shaped_noise(wet.samples.size(), clip.sample_rate_hz, p.fc_hz, p.slope_p,
                     p.noise_level_dbfs, seeded_hash(seed, "noise"));
    for (std::size_t i = 0; i < wet.samples.size(); ++i) {
      wet.samples[i] += bed.samples[i];
    }
  }

  wet = soft_clip(wet, p.clip_drive);
  return blend(clip, wet, z);
}

audio::AudioClip apply_underwater(const audio::AudioClip& clip,
                                  const UnderwaterParams& p,
                                  const DegradedZone& zone, uint64_t /*seed*/,
                                  double crossfade_s, int fft_size, int hop) {
  const ZoneSamples z = resolve_zone(clip, zone, crossfade_s);

  audio::AudioClip segment;
  segment.sample_rate_hz = clip.sample_rate_hz;
  segment.samples.assign(clip.samples.begin() + static_cast<long>(z.s0),
                         clip.samples.begin() + static_cast<long>(z.s1));

  audio::AudioClip wet = shape_spectrum(segment, fft_size, hop, [&](double f) {
    return lowpass_gain(f, p.fc_hz, p.slope_p) *
           scoop_gain(f, p.scoop_db, p.scoop_center_hz, p.scoop_q);
  });

  // Amplitude wobble, with t measured from the zone start so the shape is
  // independent of the crossfade length.
  const double sr = clip.sample_rate_hz;
  for (std::size_t i = 0; i < wet.samples.size(); ++i) {
    const double t =
        (static_cast<double>(z.s0 + i) - static_cast<double>(z.z0)) / sr;
    const double m =
        1.0 - p.wobble_depth * (0.5 + 0.5 * std::sin(kTwoPi * p.wobble_hz * t));
    wet.samples[i] *= m;
  }
  return blend(clip, wet, z);
}

audio::AudioClip mix_background_noise(const audio::AudioClip& clip,
                                      const audio::AudioClip& noise,
                                      double snr_db) {
  if (clip.sample_rate_hz != noise.sample_rate_hz) {
    raise(Errc::RateMismatch, "mix_background_noise: sample rates differ");
  }
  if (audio::peak_abs(noise) == 0.0) {
    raise(Errc::SilentNoise, "mix_background_noise: silent noise source");
  }

  audio::AudioClip looped;
  looped.sample_rate_hz = clip.sample_rate_hz;
  looped.samples.resize(clip.samples.size());
  for (std::size_t i = 0; i < looped.samples.size(); ++i) {
    looped.samples[i] = noise.samples[i % noise.samples.size()];
  }

  const double noise_rms = audio::rms(looped);
  if (noise_rms == 0.0) {
    raise(Errc::SilentNoise, "mix_background_noise: looped noise is silent");
  }
  const double gain = audio::rms(clip) / (noise_rms * audio::db_to_gain(snr_db));

  audio::AudioClip out = clip;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] += gain * looped.samples[i];
  }
  return out;
}

AugmentRecipe sample_recipe(uint64_t master_seed, std::string_view item_id,
                            double clip_duration_s, const AugmentRanges& r) {
  AugmentRecipe recipe;
  recipe.seed = seeded_hash(master_seed, item_id);
  recipe.crossfade_s = r.crossfade_s;
  Rng rng(recipe.seed);

  // Draw order is part of the reproducibility contract: effect kind, effect
  // parameters in declaration order, zone length, zone start.
  if (rng.bernoulli(0.5)) {
    recipe.effect = EffectKind::CoveredMic;
    recipe.covered.fc_hz = rng.uniform(r.cm_fc_lo, r.cm_fc_hi);
    recipe.covered.slope_p = rng.uniform(r.cm_slope_lo, r.cm_slope_hi);
    recipe.covered.lf_boost_db = rng.uniform(r.cm_lf_boost_lo, r.cm_lf_boost_hi);
    recipe.covered.ripple_period_hz = r.cm_ripple_period_hz;
    recipe.covered.ripple_depth =
        rng.uniform(r.cm_ripple_depth_lo, r.cm_ripple_depth_hi);
    recipe.covered.noise_level_dbfs = rng.uniform(r.cm_noise_lo_dbfs, r.cm_noise_hi_dbfs);
    recipe.covered.clip_drive = r.cm_clip_drive;
  } else {
    recipe.effect = EffectKind::Underwater;
    recipe.underwater.fc_hz = rng.uniform(r.uw_fc_lo, r.uw_fc_hi);
    recipe.underwater.slope_p = r.uw_slope;
    recipe.underwater.scoop_db = rng.uniform(r.uw_scoop_lo_db, r.uw_scoop_hi_db);
    recipe.underwater.scoop_center_hz = r.uw_scoop_center_hz;
    recipe.underwater.scoop_q = r.uw_scoop_q;
    recipe.underwater.wobble_hz = r.uw_wobble_hz;
    recipe.underwater.wobble_depth =
        rng.uniform(r.uw_wobble_depth_lo, r.uw_wobble_depth_hi);
  }

  if (clip_duration_s < r.zone_min_s) {
    recipe.zone = {0.0, clip_duration_s};
  } else {
    const double len =
        rng.uniform(r.zone_min_s, std::min(r.zone_max_s, clip_duration_s));
    const double start = rng.uniform(0.0, clip_duration_s - len);
    recipe.zone = {start, start + len};
  }
  return recipe;
}

audio::AudioClip augment_chunk(const audio::AudioClip& clip,
                               const AugmentRecipe& recipe) {
  audio::AudioClip degraded =
      recipe.effect == EffectKind::CoveredMic
          ? apply_covered_mic(clip, recipe.covered, recipe.zone, recipe.seed,
                              recipe.crossfade_s)
          : apply_underwater(clip, recipe.underwater, recipe.zone, recipe.seed,
                             recipe.crossfade_s);
  return audio::peak_normalize(degraded, kOutputPeakDbfs).clip;
}

namespace {

// -inf (noise bed off) is stored as JSON null.
nlohmann::json level_to_json(double v) {
  if (std::isinf(v) && v < 0) return nullptr;
  return v;
}

double level_from_json(const nlohmann::json& j) {
  if (j.is_null()) return -std::numeric_limits<double>::infinity();
  return j.get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const AugmentRecipe& r) {
  j = nlohmann::json{
      {"effect", r.effect == EffectKind::CoveredMic ? "covered_mic" : "underwater"},
      {"zone", {{"start_s", r.zone.start_s}, {"end_s", r.zone.end_s}}},
      {"seed", r.seed},
      {"crossfade_s", r.crossfade_s},
  };
  if (r.effect == EffectKind::CoveredMic) {
    j["params"] = {
        {"fc_hz", r.covered.fc_hz},
        {"slope_p", r.covered.slope_p},
        {"lf_boost_db", r.covered.lf_boost_db},
        {"ripple_period_hz", r.covered.ripple_period_hz},
        {"ripple_depth", r.covered.ripple_depth},
        {"noise_level_dbfs", level_to_json(r.covered.noise_level_dbfs)},
        {"clip_drive", r.covered.clip_drive},
    };
  } else {
    j["params"] = {
        {"fc_hz", r.underwater.fc_hz},
        {"slope_p", r.underwater.slope_p},
        {"scoop_db", r.underwater.scoop_db},
        {"scoop_center_hz", r.underwater.scoop_center_hz},
        {"scoop_q", r.underwater.scoop_q},
        {"wobble_hz", r.underwater.wobble_hz},
        {"wobble_depth", r.underwater.wobble_depth},
    };
  }
}

void from_json(const nlohmann::json& j, AugmentRecipe& r) {
  const std::string effect = j.at("effect").get<std::string>();
  r.effect = effect == "covered_mic" ? EffectKind::CoveredMic
                                     : EffectKind::Underwater;
  r.zone.start_s = j.at("zone").at("start_s").get<double>();
  r.zone.end_s = j.at("zone").at("end_s").get<double>();
  r.seed = j.at("seed").get<uint64_t>();
  r.crossfade_s = j.at("crossfade_s").get<double>();
  const auto& p = j.at("params");
  if (r.effect == EffectKind::CoveredMic) {
    r.covered.fc_hz = p.at("fc_hz").get<double>();
    r.covered.slope_p = p.at("slope_p").get<double>();
    r.covered.lf_boost_db = p.at("lf_boost_db").get<double>();
    r.covered.ripple_period_hz = p.at("ripple_period_hz").get<double>();
    r.covered.ripple_depth = p.at("ripple_depth").get<double>();
    r.covered.noise_level_dbfs = level_from_json(p.at("noise_level_dbfs"));
    r.covered.clip_drive = p.at("clip_drive").get<double>();
  } else {
    r.underwater.fc_hz = p.at("fc_hz").get<double>();
    r.underwater.slope_p = p.at("slope_p").get<double>();
    r.underwater.scoop_db = p.at("scoop_db").get<double>();
    r.underwater.scoop_center_hz = p.at("scoop_center_hz").get<double>();
    r.underwater.scoop_q = p.at("scoop_q").get<double>();
    r.underwater.wobble_hz = p.at("wobble_hz").get<double>();
    r.underwater.wobble_depth = p.at("wobble_depth").get<double>();
  }
}

}  // namespace shobdosetu::augment
