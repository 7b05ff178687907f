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

#include <complex>
#include <cstddef>
#include <vector>

#include "shobdosetu/audio_clip.hpp"

namespace shobdosetu::audio {

enum class WindowKind { Hann };

/// One-sided short-time spectrum, frame-major. Frame t covers samples
/// [t*hop, t*hop + fft_size), zero-padded past the end of the signal.
struct Spectrogram {
  std::vector<std::complex<double>> coeffs;  // n_frames * bins() entries
  std::size_t n_frames = 0;
  int fft_size = 0;
  int hop = 0;
  WindowKind window_kind = WindowKind::Hann;
  int sample_rate_hz = 0;

  std::size_t bins() const { return static_cast<std::size_t>(fft_size) / 2 + 1; }

  std::complex<double>& at(std::size_t frame, std::size_t bin) {
    return coeffs[frame * bins() + bin];
  }
  const std::complex<double>& at(std::size_t frame, std::size_t bin) const {
    return coeffs[frame * bins() + bin];
  }

  double bin_center_hz(std::size_t bin) const {
    return static_cast<double>(bin) * sample_rate_hz / fft_size;
  }
};

inline constexpr int kDefaultFftSize = 1024;
inline constexpr int kDefaultHop = 256;

/// Hann-windowed one-sided STFT with frame count ceil(len / hop). The hop
/// must divide fft_size (constant overlap-add), otherwise BadConfig.
///
/// The Hann window is sampled at half-sample offsets,
/// w[k] = 0.5 - 0.5*cos(2*pi*(k + 0.5)/N), which keeps the same 3-tap
/// spectral footprint and overlap-add constant as the usual periodic Hann
/// but is strictly positive, so the inverse transform can divide by the
/// attained window sum and reconstruct edge samples exactly.
Spectrogram stft(const AudioClip& clip, int fft_size = kDefaultFftSize,
                 int hop = kDefaultHop);

/// Overlap-add inverse. Each frame is inverse-transformed, accumulated, and
/// the result divided by the per-sample attained window sum; the output is
/// truncated or zero-padded to target_len.
AudioClip istft(const Spectrogram& spec, std::size_t target_len);

/// The analysis window used by stft/istft, length fft_size.
std::vector<double> hann_window(int fft_size);

}  // namespace shobdosetu::audio
