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

#include "shobdosetu/stft.hpp"

#include <cmath>

#include "shobdosetu/errors.hpp"

namespace shobdosetu::audio {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT. invert=true gives the unscaled inverse;
// the caller divides by n.
void fft_pow2(std::vector<std::complex<double>>& a, bool invert) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / static_cast<double>(len) * (invert ? 1 : -1);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> u = a[i + j];
        std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// O(n^2) DFT for non-power-of-two sizes. Slow but exact; power-of-two
// fft_size is the expected configuration.
void dft_naive(std::vector<std::complex<double>>& a, bool invert) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  const double sign = invert ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = sign * 2.0 * kPi * static_cast<double>(k) *
                         static_cast<double>(t) / static_cast<double>(n);
      acc += a[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  a.swap(out);
}

void fft(std::vector<std::complex<double>>& a, bool invert) {
  if (is_pow2(static_cast<int>(a.size()))) {
    fft_pow2(a, invert);
  } else {
    dft_naive(a, invert);
  }
}

}  // namespace

std::vector<double> hann_window(int fft_size) {
  std::vector<double> w(static_cast<std::size_t>(fft_size));
  for (int k = 0; k < fft_size; ++k) {
    // Half-sample offset keeps w > 0 everywhere; see stft.hpp.
    w[static_cast<std::size_t>(k)] =
        0.5 - 0.5 * std::cos(2.0 * kPi * (k + 0.5) / fft_size);
  }
  return w;
}

Spectrogram stft(const AudioClip& clip, int fft_size, int hop) {
  if (fft_size < 2 || hop < 1 || hop > fft_size || fft_size % hop != 0) {
    raise(Errc::BadConfig, "stft: hop must divide fft_size and be <= it");
  }

  Spectrogram spec;
  spec.fft_size = fft_size;
  spec.hop = hop;
  spec.sample_rate_hz = clip.sample_rate_hz;
  const std::size_t len = clip.samples.size();
  spec.n_frames = (len + static_cast<std::size_t>(hop) - 1) /
                  static_cast<std::size_t>(hop);
  const std::size_t bins = spec.bins();
  spec.coeffs.assign(spec.n_frames * bins, {0.0, 0.0});

  const std::vector<double> window = hann_window(fft_size);
  std::vector<std::complex<double>> frame(static_cast<std::size_t>(fft_size));

  for (std::size_t t = 0; t < spec.n_frames; ++t) {
    const std::size_t base = t * static_cast<std::size_t>(hop);
    for (int k = 0; k < fft_size; ++k) {
      const std::size_t idx = base + static_cast<std::size_t>(k);
      const double x = idx < len ? clip.samples[idx] : 0.0;
      frame[static_cast<std::size_t>(k)] = {x * window[static_cast<std::size_t>(k)], 0.0};
    }
    fft(frame, false);
    for (std::size_t b = 0; b < bins; ++b) spec.at(t, b) = frame[b];
  }
  return spec;
}

AudioClip istft(const Spectrogram& spec, std::size_t target_len) {
  AudioClip out;
  out.sample_rate_hz = spec.sample_rate_hz;
  out.samples.assign(target_len, 0.0);
  if (spec.n_frames == 0 || spec.fft_size < 2) return out;

  const auto n = static_cast<std::size_t>(spec.fft_size);
  const std::size_t bins = spec.bins();
  const std::size_t coverage = (spec.n_frames - 1) * static_cast<std::size_t>(spec.hop) + n;

  std::vector<double> acc(coverage, 0.0);
  std::vector<double> wsum(coverage, 0.0);
  const std::vector<double> window = hann_window(spec.fft_size);
  std::vector<std::complex<double>> frame(n);

  for (std::size_t t = 0; t < spec.n_frames; ++t) {
    // Rebuild the two-sided spectrum from the one-sided half (real input).
    for (std::size_t b = 0; b < bins; ++b) frame[b] = spec.at(t, b);
    for (std::size_t b = bins; b < n; ++b) frame[b] = std::conj(spec.at(t, n - b));
    fft(frame, true);
    const std::size_t base = t * static_cast<std::size_t>(spec.hop);
    for (std::size_t k = 0; k < n; ++k) {
      acc[base + k] += frame[k].real() / static_cast<double>(n);
      wsum[base + k] += window[k];
    }
  }

  const std::size_t copy = std::min(target_len, coverage);
  for (std::size_t i = 0; i < copy; ++i) {
    out.samples[i] = wsum[i] > 0.0 ? acc[i] / wsum[i] : 0.0;
  }
  return out;
}

}  // namespace shobdosetu::audio
