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

#include "shobdosetu/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "shobdosetu/errors.hpp"

namespace shobdosetu::audio {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatIeeeFloat = 0x0003;

uint16_t read_u16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t read_u32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char>& out, uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
  }
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioClip read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::NotFound, "cannot open " + path.string());

  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    raise(Errc::UnsupportedEncoding, "not a RIFF/WAVE file: " + path.string());
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  bool have_fmt = false;
  std::size_t data_off = 0, data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    uint32_t chunk_len = read_u32(hdr + 4);
    std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size()) chunk_len = static_cast<uint32_t>(bytes.size() - body);
    if (std::memcmp(hdr, "fmt ", 4) == 0 && chunk_len >= 16) {
      const unsigned char* f = bytes.data() + body;
      format = read_u16(f);
      channels = read_u16(f + 2);
      sample_rate = read_u32(f + 4);
      bits = read_u16(f + 14);
      // WAVE_FORMAT_EXTENSIBLE carries the real format in the sub-format GUID.
      if (format == 0xFFFE && chunk_len >= 40) format = read_u16(f + 24);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data_off = body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_off == 0) {
    raise(Errc::UnsupportedEncoding, "missing fmt/data chunk: " + path.string());
  }
  if (channels != 1) {
    raise(Errc::MultiChannel,
          path.string() + " has " + std::to_string(channels) + " channels");
  }
  if (sample_rate == 0) {
    raise(Errc::UnsupportedEncoding, "zero sample rate: " + path.string());
  }

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(sample_rate);
  const unsigned char* data = bytes.data() + data_off;

  if (format == kFormatPcm && bits == 16) {
    const std::size_t n = data_len / 2;
    clip.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = static_cast<int16_t>(read_u16(data + 2 * i));
      clip.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatIeeeFloat && bits == 32) {
    const std::size_t n = data_len / 4;
    clip.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      uint32_t u = read_u32(data + 4 * i);
      float f;
      std::memcpy(&f, &u, 4);
      clip.samples[i] = static_cast<double>(f);
    }
  } else {
    raise(Errc::UnsupportedEncoding,
          path.string() + ": format tag " + std::to_string(format) + ", " +
              std::to_string(bits) + " bits");
  }
  return clip;
}

namespace {

std::size_t encode_into(std::vector<unsigned char>& out, const AudioClip& clip,
                        WavEncoding encoding) {
  const bool pcm = encoding == WavEncoding::Pcm16;
  const uint16_t bytes_per = pcm ? 2 : 4;
  const auto n = static_cast<uint32_t>(clip.samples.size());
  const uint32_t data_len = n * bytes_per;

  out.reserve(44 + data_len);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_len);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, pcm ? kFormatPcm : kFormatIeeeFloat);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<uint32_t>(clip.sample_rate_hz));
  put_u32(out, static_cast<uint32_t>(clip.sample_rate_hz) * bytes_per);
  put_u16(out, bytes_per);
  put_u16(out, pcm ? 16 : 32);
  put_tag(out, "data");
  put_u32(out, data_len);

  std::size_t clipped = 0;
  if (pcm) {
    for (double s : clip.samples) {
      long long q = std::llround(s * 32768.0);
      if (q > 32767) {
        q = 32767;
        ++clipped;
      } else if (q < -32768) {
        q = -32768;
        ++clipped;
      }
      put_u16(out, static_cast<uint16_t>(static_cast<int16_t>(q)));
    }
  } else {
    for (double s : clip.samples) {
      auto f = static_cast<float>(s);
      uint32_t u;
      std::memcpy(&u, &f, 4);
      put_u32(out, u);
    }
  }
  return clipped;
}

}  // namespace

std::vector<unsigned char> encode_wav(const AudioClip& clip,
                                      WavEncoding encoding) {
  std::vector<unsigned char> out;
  encode_into(out, clip, encoding);
  return out;
}

WavWriteResult write_wav(const std::filesystem::path& path,
                         const AudioClip& clip, WavEncoding encoding) {
  std::vector<unsigned char> out;
  WavWriteResult result;
  result.clipped_samples = encode_into(out, clip, encoding);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) raise(Errc::IoFailure, "cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
  if (!f) raise(Errc::IoFailure, "short write to " + path.string());
  return result;
}

}  // namespace shobdosetu::audio
