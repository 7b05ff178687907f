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
#include <limits>

#include "shobdosetu/augment.hpp"
#include "shobdosetu/errors.hpp"
#include "shobdosetu/rng.hpp"
#include "shobdosetu/stft.hpp"

using namespace shobdosetu;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

audio::AudioClip sine(double freq_hz, double seconds, int rate, double amp = 0.5) {
  audio::AudioClip c;
  c.sample_rate_hz = rate;
  c.samples.resize(static_cast<std::size_t>(seconds * rate));
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    c.samples[i] = amp * std::sin(2.0 * kPi * freq_hz * static_cast<double>(i) / rate);
  }
  return c;
}

double segment_rms(const audio::AudioClip& c, double t0, double t1) {
  const auto i0 = static_cast<std::size_t>(t0 * c.sample_rate_hz);
  const auto i1 = static_cast<std::size_t>(t1 * c.sample_rate_hz);
  double acc = 0.0;
  for (std::size_t i = i0; i < i1; ++i) acc += c.samples[i] * c.samples[i];
  return std::sqrt(acc / static_cast<double>(i1 - i0));
}

}  // namespace

TEST_CASE("lowpass_gain matches its closed form") {
  CHECK(augment::lowpass_gain(0.0, 1000.0, 8.0) == doctest::Approx(1.0));
  CHECK(augment::lowpass_gain(1000.0, 1000.0, 8.0) == doctest::Approx(0.5));
  CHECK(augment::lowpass_gain(2000.0, 1000.0, 8.0) == doctest::Approx(1.0 / 257.0));
  // dB checks at 4 kHz for an 800 Hz cutoff.
  CHECK(audio::gain_to_db(augment::lowpass_gain(4000.0, 800.0, 6.0)) ==
        doctest::Approx(-83.88).epsilon(0.001));
  CHECK(audio::gain_to_db(augment::lowpass_gain(4000.0, 800.0, 8.0)) ==
        doctest::Approx(-111.84).epsilon(0.001));
}

TEST_CASE("lowpass_gain: raising the slope never raises gain above cutoff") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double fc = rng.uniform(600.0, 2000.0);
    const double f = fc * rng.uniform(1.0, 8.0);
    const double p1 = rng.uniform(4.0, 10.0);
    const double p2 = p1 + rng.uniform(0.0, 4.0);
    CHECK(augment::lowpass_gain(f, fc, p2) <= augment::lowpass_gain(f, fc, p1) + 1e-15);
  }
}

TEST_CASE("soft_clip") {
  audio::AudioClip c;
  c.sample_rate_hz = 16000;
  c.samples = {0.0, 1.0, -1.0, 0.25, 3.0};
  audio::AudioClip out = augment::soft_clip(c, 1.8);
  CHECK(out.samples[0] == 0.0);
  CHECK(out.samples[1] == doctest::Approx(std::tanh(1.8)));  // 0.9468
  CHECK(out.samples[2] == doctest::Approx(-std::tanh(1.8)));
  for (double s : out.samples) CHECK(std::fabs(s) < 1.0);
}

TEST_CASE("shaped_noise: level, determinism, spectral rolloff") {
  const double fc = 1000.0, slope = 6.0;
  audio::AudioClip n1 = augment::shaped_noise(32000, 16000, fc, slope, -48.0, 99);
  audio::AudioClip n2 = augment::shaped_noise(32000, 16000, fc, slope, -48.0, 99);
  audio::AudioClip n3 = augment::shaped_noise(32000, 16000, fc, slope, -48.0, 100);

  CHECK(audio::peak_abs(n1) == doctest::Approx(0.003981).epsilon(1e-4));
  CHECK(n1.samples == n2.samples);
  CHECK(n1.samples != n3.samples);

  // Mean band magnitude at [4fc, 5fc] must sit at least 30 dB under [0, fc/2].
  audio::Spectrogram s = audio::stft(n1, 1024, 256);
  double low = 0.0, high = 0.0;
  std::size_t low_n = 0, high_n = 0;
  for (std::size_t t = 0; t < s.n_frames; ++t) {
    for (std::size_t b = 0; b < s.bins(); ++b) {
      const double f = s.bin_center_hz(b);
      if (f <= fc / 2) {
        low += std::abs(s.at(t, b));
        ++low_n;
      } else if (f >= 4 * fc && f <= 5 * fc) {
        high += std::abs(s.at(t, b));
        ++high_n;
      }
    }
  }
  const double ratio_db = 20.0 * std::log10((low / low_n) / (high / high_n));
  CHECK(ratio_db >= 30.0);
}

TEST_CASE("sample_recipe: determinism and zone rules") {
  const augment::AugmentRecipe a = augment::sample_recipe(42, "item-1", 30.0);
  const augment::AugmentRecipe b = augment::sample_recipe(42, "item-1", 30.0);
  CHECK(a.effect == b.effect);
  CHECK(a.zone.start_s == b.zone.start_s);
  CHECK(a.zone.end_s == b.zone.end_s);
  CHECK(a.seed == b.seed);

  SUBCASE("short clips take the whole clip as zone") {
    const augment::AugmentRecipe r = augment::sample_recipe(42, "short", 4.0);
    CHECK(r.zone.start_s == 0.0);
    CHECK(r.zone.end_s == 4.0);
  }
  SUBCASE("zones are 5-10 s inside the clip for long clips") {
    Rng rng(1);
    for (int i = 0; i < 2000; ++i) {
      const double dur = rng.uniform(5.0, 40.0);
      const augment::AugmentRecipe r =
          augment::sample_recipe(7, "z" + std::to_string(i), dur);
      const double len = r.zone.length_s();
      CHECK(len >= 5.0 - 1e-9);
      CHECK(len <= 10.0 + 1e-9);
      CHECK(r.zone.start_s >= 0.0);
      CHECK(r.zone.end_s <= dur + 1e-9);
    }
  }
  SUBCASE("effect split converges to a fair coin") {
    std::size_t covered = 0;
    const std::size_t n = 6500;
    for (std::size_t i = 0; i < n; ++i) {
      const augment::AugmentRecipe r =
          augment::sample_recipe(20260101, "aug" + std::to_string(i), 12.0);
      if (r.effect == augment::EffectKind::CoveredMic) ++covered;
    }
    // 99.9% binomial interval for p = 0.5, n = 6500.
    CHECK(covered >= 3088);
    CHECK(covered <= 3412);
  }
  SUBCASE("parameters land inside their ranges") {
    for (int i = 0; i < 500; ++i) {
      const augment::AugmentRecipe r =
          augment::sample_recipe(3, "p" + std::to_string(i), 20.0);
      if (r.effect == augment::EffectKind::CoveredMic) {
        CHECK(r.covered.fc_hz >= 600.0);
        CHECK(r.covered.fc_hz <= 2000.0);
        CHECK(r.covered.slope_p >= 4.0);
        CHECK(r.covered.slope_p <= 10.0);
        CHECK(r.covered.lf_boost_db >= 0.0);
        CHECK(r.covered.lf_boost_db <= 8.0);
        CHECK(r.covered.noise_level_dbfs >= -48.0);
        CHECK(r.covered.noise_level_dbfs <= -35.0);
        CHECK(r.covered.clip_drive == 1.8);
      } else {
        CHECK(r.underwater.fc_hz >= 800.0);
        CHECK(r.underwater.fc_hz <= 1200.0);
        CHECK(r.underwater.scoop_db >= -14.0);
        CHECK(r.underwater.scoop_db <= -4.0);
        CHECK(r.underwater.slope_p == 8.0);
      }
    }
  }
}

TEST_CASE("apply_covered_mic: silent input with the noise bed off stays silent") {
  audio::AudioClip c;
  c.sample_rate_hz = 16000;
  c.samples.assign(16000 * 8, 0.0);
  augment::CoveredMicParams p;
  p.noise_level_dbfs = kNegInf;
  audio::AudioClip out = augment::apply_covered_mic(c, p, {1.0, 7.0}, 5);
  for (double s : out.samples) CHECK(s == 0.0);
}

TEST_CASE("apply_covered_mic: samples outside zone + crossfade are bit-identical") {
  audio::AudioClip c = sine(440.0, 12.0, 16000);
  augment::CoveredMicParams p;
  const augment::DegradedZone zone{3.0, 9.0};
  const double xf = 0.05;
  audio::AudioClip out = augment::apply_covered_mic(c, p, zone, 17, xf);
  REQUIRE(out.samples.size() == c.samples.size());

  const auto lo = static_cast<std::size_t>((zone.start_s - xf) * 16000);
  const auto hi = static_cast<std::size_t>((zone.end_s + xf) * 16000);
  for (std::size_t i = 0; i < lo; ++i) CHECK(out.samples[i] == c.samples[i]);
  for (std::size_t i = hi + 1; i < out.samples.size(); ++i) {
    CHECK(out.samples[i] == c.samples[i]);
  }
  // And the zone itself did change.
  CHECK(segment_rms(out, 4.0, 8.0) != segment_rms(c, 4.0, 8.0));
}

TEST_CASE("apply effects: zone outside the clip throws ZoneOutOfRange") {
  audio::AudioClip c = sine(300.0, 6.0, 16000);
  augment::CoveredMicParams cm;
  augment::UnderwaterParams uw;
  try {
    augment::apply_covered_mic(c, cm, {2.0, 9.0}, 1);
    FAIL("expected ZoneOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZoneOutOfRange);
  }
  CHECK_THROWS_AS(augment::apply_underwater(c, uw, {-1.0, 3.0}, 1), Error);
  CHECK_THROWS_AS(augment::apply_covered_mic(c, cm, {3.0, 3.0}, 1), Error);
}

TEST_CASE("apply_covered_mic: a 4 kHz tone is crushed by fc=800, p=8") {
  audio::AudioClip c = sine(4000.0, 12.0, 16000);
  augment::CoveredMicParams p;
  p.fc_hz = 800.0;
  p.slope_p = 8.0;
  p.lf_boost_db = 0.0;
  p.ripple_depth = 0.0;
  p.noise_level_dbfs = kNegInf;
  audio::AudioClip out = augment::apply_covered_mic(c, p, {2.0, 9.0}, 3);
  const double before = segment_rms(c, 2.5, 8.5);
  const double after = segment_rms(out, 2.5, 8.5);
  CHECK(20.0 * std::log10(after / before) <= -50.0);
}

TEST_CASE("apply_underwater: scoop gain and wobble") {
  SUBCASE("scoop center attenuation is 10^(scoop_db/20)") {
    // A tone at the scoop center passes the low-pass at
    // lowpass_gain(1500, fc, 8) and the scoop at 10^(scoop_db/20).
    const double fc = 1200.0, scoop_db = -10.0;
    audio::AudioClip c = sine(1500.0, 12.0, 16000);
    augment::UnderwaterParams p;
    p.fc_hz = fc;
    p.scoop_db = scoop_db;
    p.wobble_depth = 0.0;
    audio::AudioClip out = augment::apply_underwater(c, p, {2.0, 9.0}, 5);
    const double gain = segment_rms(out, 3.0, 8.0) / segment_rms(c, 3.0, 8.0);
    const double expected =
        augment::lowpass_gain(1500.0, fc, 8.0) * std::pow(10.0, scoop_db / 20.0);
    CHECK(gain == doctest::Approx(expected).epsilon(0.02));
    CHECK(std::pow(10.0, scoop_db / 20.0) == doctest::Approx(0.3162).epsilon(1e-3));
  }

  SUBCASE("wobble_depth 0 is time-invariant inside the zone") {
    audio::AudioClip c = sine(300.0, 12.0, 16000);
    augment::UnderwaterParams p;
    p.wobble_depth = 0.0;
    audio::AudioClip out = augment::apply_underwater(c, p, {1.0, 11.0}, 5);
    const double a = segment_rms(out, 2.0, 3.0);
    const double b = segment_rms(out, 8.0, 9.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-3));
  }

  SUBCASE("wobble at 0.35 Hz produces a 2.857 s envelope period") {
    audio::AudioClip c = sine(220.0, 10.0, 16000);
    augment::UnderwaterParams p;
    p.wobble_depth = 1.0;
    audio::AudioClip out = augment::apply_underwater(c, p, {0.0, 10.0}, 5);

    // 10 ms-hop RMS envelope, mean removed, autocorrelation peak in lag
    // range [2.0 s, 3.6 s].
    const std::size_t hop = 160, win = 320;
    std::vector<double> env;
    for (std::size_t i = 0; i + win < out.samples.size(); i += hop) {
      double acc = 0.0;
      for (std::size_t k = 0; k < win; ++k) acc += out.samples[i + k] * out.samples[i + k];
      env.push_back(std::sqrt(acc / win));
    }
    double mean = 0.0;
    for (double e : env) mean += e;
    mean /= static_cast<double>(env.size());
    for (double& e : env) e -= mean;

    std::size_t best_lag = 0;
    double best = -1e30;
    for (std::size_t lag = 200; lag <= 360; ++lag) {  // 2.0 .. 3.6 s
      double acc = 0.0;
      for (std::size_t i = 0; i + lag < env.size(); ++i) acc += env[i] * env[i + lag];
      acc /= static_cast<double>(env.size() - lag);
      if (acc > best) {
        best = acc;
        best_lag = lag;
      }
    }
    const double period_s = static_cast<double>(best_lag) * hop / 16000.0;
    CHECK(period_s == doctest::Approx(1.0 / 0.35).epsilon(0.05 / 2.857));
  }
}

TEST_CASE("mix_background_noise") {
  audio::AudioClip c = sine(440.0, 2.0, 16000);

  SUBCASE("0 dB with the clip itself doubles the RMS") {
    audio::AudioClip out = augment::mix_background_noise(c, c, 0.0);
    CHECK(audio::rms(out) == doctest::Approx(2.0 * audio::rms(c)).epsilon(1e-9));
  }
  SUBCASE("+100 dB leaves the clip essentially unchanged") {
    audio::AudioClip noise = augment::shaped_noise(32000, 16000, 2000.0, 2.0, -10.0, 3);
    audio::AudioClip out = augment::mix_background_noise(c, noise, 100.0);
    double diff = 0.0;
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
      diff += (out.samples[i] - c.samples[i]) * (out.samples[i] - c.samples[i]);
    }
    CHECK(std::sqrt(diff / c.samples.size()) < 1e-4 * audio::rms(c));
  }
  SUBCASE("measured SNR equals the request within 0.1 dB") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
      audio::AudioClip noise =
          augment::shaped_noise(9000, 16000, 3000.0, 2.0, -12.0, 100 + trial);
      const double snr = rng.uniform(-5.0, 30.0);
      audio::AudioClip out = augment::mix_background_noise(c, noise, snr);
      // Recover the mixed-in noise and re-measure the ratio.
      audio::AudioClip added = out;
      for (std::size_t i = 0; i < added.samples.size(); ++i) {
        added.samples[i] -= c.samples[i];
      }
      const double measured = 20.0 * std::log10(audio::rms(c) / audio::rms(added));
      CHECK(measured == doctest::Approx(snr).epsilon(0.1 / 30.0));
    }
  }
  SUBCASE("silent noise throws") {
    audio::AudioClip silent;
    silent.sample_rate_hz = 16000;
    silent.samples.assign(100, 0.0);
    CHECK_THROWS_AS(augment::mix_background_noise(c, silent, 10.0), Error);
  }
  SUBCASE("rate mismatch throws") {
    audio::AudioClip other = sine(440.0, 1.0, 8000);
    CHECK_THROWS_AS(augment::mix_background_noise(c, other, 10.0), Error);
  }
}

TEST_CASE("augment_chunk: output peak is -1 dBFS and everything is deterministic") {
  audio::AudioClip c = sine(500.0, 12.0, 16000, 0.3);
  for (int i = 0; i < 4; ++i) {
    const augment::AugmentRecipe recipe =
        augment::sample_recipe(99, "chunk" + std::to_string(i), c.duration_s());
    const audio::AudioClip out = augment::augment_chunk(c, recipe);
    CHECK(audio::peak_abs(out) == doctest::Approx(0.8913).epsilon(0.001 / 0.8913));
    const audio::AudioClip again = augment::augment_chunk(c, recipe);
    CHECK(out.samples == again.samples);
  }
}

TEST_CASE("augment_chunk: out-of-zone spectra change only by the global scalar") {
  audio::AudioClip c = sine(700.0, 14.0, 16000, 0.3);
  augment::AugmentRecipe recipe = augment::sample_recipe(5, "frozen", c.duration_s());
  recipe.zone = {5.0, 10.0};
  const audio::AudioClip out = augment::augment_chunk(c, recipe);

  audio::Spectrogram si = audio::stft(c, 1024, 256);
  audio::Spectrogram so = audio::stft(out, 1024, 256);

  // Frames fully inside [0, zone.start - crossfade).
  const std::size_t frame_hi =
      (static_cast<std::size_t>((recipe.zone.start_s - recipe.crossfade_s) * 16000) -
       1024) / 256;
  const double scale = std::abs(so.at(1, 28)) / std::abs(si.at(1, 28));
  double max_in = 0.0;
  for (std::size_t t = 0; t < frame_hi; ++t) {
    for (std::size_t b = 0; b < si.bins(); ++b) {
      max_in = std::max(max_in, std::abs(si.at(t, b)));
    }
  }
  for (std::size_t t = 0; t < frame_hi; ++t) {
    for (std::size_t b = 0; b < si.bins(); ++b) {
      CHECK(std::abs(so.at(t, b) - scale * si.at(t, b)) <= 1e-6 * scale * max_in);
    }
  }
}

TEST_CASE("recipe JSON round trip") {
  for (const char* id : {"a", "b", "c", "d"}) {
    const augment::AugmentRecipe r = augment::sample_recipe(123, id, 25.0);
    const nlohmann::json j = r;
    const auto back = j.get<augment::AugmentRecipe>();
    CHECK(back.effect == r.effect);
    CHECK(back.seed == r.seed);
    CHECK(back.zone.start_s == r.zone.start_s);
    CHECK(back.zone.end_s == r.zone.end_s);
    if (r.effect == augment::EffectKind::CoveredMic) {
      CHECK(back.covered.fc_hz == r.covered.fc_hz);
      CHECK(back.covered.noise_level_dbfs == r.covered.noise_level_dbfs);
    } else {
      CHECK(back.underwater.fc_hz == r.underwater.fc_hz);
      CHECK(back.underwater.wobble_depth == r.underwater.wobble_depth);
    }
  }
  // The "noise off" sentinel survives the trip through JSON null.
  augment::AugmentRecipe r;
  r.covered.noise_level_dbfs = kNegInf;
  r.zone = {0.0, 5.0};
  const nlohmann::json j = r;
  CHECK(j["params"]["noise_level_dbfs"].is_null());
  CHECK(std::isinf(j.get<augment::AugmentRecipe>().covered.noise_level_dbfs));
}
