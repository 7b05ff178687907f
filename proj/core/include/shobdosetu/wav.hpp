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
#include <filesystem>
#include <string>
#include <vector>

#include "shobdosetu/audio_clip.hpp"

namespace shobdosetu::audio {

enum class WavEncoding { Pcm16, Float32 };

/// Reads a mono RIFF/WAVE file (PCM16 or IEEE float32). PCM16 samples are
/// decoded as value / 32768. Throws NotFound / UnsupportedEncoding /
/// MultiChannel.
AudioClip read_wav(const std::filesystem::path& path);

struct WavWriteResult {
  // Number of samples clamped to the representable range on encode.
  std::size_t clipped_samples = 0;
};

/// Writes a mono WAV file. PCM16 encodes as clamp(round(x * 32768)) to
/// [-32768, 32767]; Float32 is lossless up to the float cast.
WavWriteResult write_wav(const std::filesystem::path& path,
                         const AudioClip& clip,
                         WavEncoding encoding = WavEncoding::Pcm16);

/// In-memory variant of write_wav; used for shipping audio tails to a
/// remote endpoint without touching disk.
std::vector<unsigned char> encode_wav(const AudioClip& clip,
                                      WavEncoding encoding = WavEncoding::Pcm16);

}  // namespace shobdosetu::audio
