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

#include <stdexcept>
#include <string>

namespace shobdosetu {

enum class Errc {
  // I/O and format errors (CLI exit code 2)
  NotFound,
  IoFailure,
  UnsupportedEncoding,
  MultiChannel,
  BadConfig,
  MalformedDocument,
  MalformedLine,
  NegativeTime,
  UnpairedRecording,
  // contract violations (CLI exit code 2)
  RateMismatch,
  SilentNoise,
  ZoneOutOfRange,
  OutOfRange,
  EmptyTranscript,
  InconsistentDecision,
  // semantic errors (CLI exit code 3)
  EmptyReference,
  EmptyCorpus,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotFound: return "NotFound";
    case Errc::IoFailure: return "IoFailure";
    case Errc::UnsupportedEncoding: return "UnsupportedEncoding";
    case Errc::MultiChannel: return "MultiChannel";
    case Errc::BadConfig: return "BadConfig";
    case Errc::MalformedDocument: return "MalformedDocument";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::NegativeTime: return "NegativeTime";
    case Errc::UnpairedRecording: return "UnpairedRecording";
    case Errc::RateMismatch: return "RateMismatch";
    case Errc::SilentNoise: return "SilentNoise";
    case Errc::ZoneOutOfRange: return "ZoneOutOfRange";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::EmptyTranscript: return "EmptyTranscript";
    case Errc::InconsistentDecision: return "InconsistentDecision";
    case Errc::EmptyReference: return "EmptyReference";
    case Errc::EmptyCorpus: return "EmptyCorpus";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace shobdosetu
