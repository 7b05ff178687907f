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

#include "shobdosetu/endpoint.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>
#include <unordered_map>

#include <httplib.h>
#include <json.hpp>

#include "shobdosetu/errors.hpp"
#include "shobdosetu/wav.hpp"

namespace shobdosetu::corpus {

std::string base64_encode(const unsigned char* data, std::size_t len) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((len + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= len; i += 3) {
    const uint32_t n = (static_cast<uint32_t>(data[i]) << 16) |
                       (static_cast<uint32_t>(data[i + 1]) << 8) | data[i + 2];
    out.push_back(kAlphabet[(n >> 18) & 63]);
    out.push_back(kAlphabet[(n >> 12) & 63]);
    out.push_back(kAlphabet[(n >> 6) & 63]);
    out.push_back(kAlphabet[n & 63]);
  }
  if (i + 1 == len) {
    const uint32_t n = static_cast<uint32_t>(data[i]) << 16;
    out.push_back(kAlphabet[(n >> 18) & 63]);
    out.push_back(kAlphabet[(n >> 12) & 63]);
    out += "==";
  } else if (i + 2 == len) {
    const uint32_t n = (static_cast<uint32_t>(data[i]) << 16) |
                       (static_cast<uint32_t>(data[i + 1]) << 8);
    out.push_back(kAlphabet[(n >> 18) & 63]);
    out.push_back(kAlphabet[(n >> 12) & 63]);
    out.push_back(kAlphabet[(n >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

namespace {

using WordTable = std::unordered_map<std::string, std::vector<std::string>>;

WordTable load_word_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::NotFound, "cannot open " + path.string());
  WordTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("chunk_id") ||
        !j.contains("words") || !j["words"].is_array()) {
      raise(Errc::MalformedDocument, path.string() + ":" +
                                         std::to_string(line_no) +
                                         ": expected {chunk_id, words}");
    }
    std::vector<std::string> words;
    for (const auto& w : j["words"]) words.push_back(w.get<std::string>());
    table[j["chunk_id"].get<std::string>()] = std::move(words);
  }
  return table;
}

class FileEndpointProvider final : public EndpointProvider {
 public:
  explicit FileEndpointProvider(const std::filesystem::path& path)
      : table_(load_word_table(path)) {}

  std::vector<std::string> predict(const std::string& chunk_id,
                                   const audio::AudioClip&) override {
    auto it = table_.find(chunk_id);
    return it == table_.end() ? std::vector<std::string>{} : it->second;
  }

 private:
  WordTable table_;
};

class FileReplacementProvider final : public ReplacementProvider {
 public:
  explicit FileReplacementProvider(const std::filesystem::path& path)
      : table_(load_word_table(path)) {}

  std::vector<std::string> replacements(const std::string& chunk_id,
                                        const std::vector<std::string>&,
                                        const std::vector<std::size_t>&) override {
    auto it = table_.find(chunk_id);
    return it == table_.end() ? std::vector<std::string>{} : it->second;
  }

 private:
  WordTable table_;
};

// Splits "http://host:port/path" into client target and request path.
struct UrlParts {
  std::string host_port;  // scheme://host[:port]
  std::string path;       // /path or /
};

UrlParts split_url(const std::string& url) {
  UrlParts parts;
  const auto scheme_end = url.find("://");
  const std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  if (path_start == std::string::npos) {
    parts.host_port = url;
    parts.path = "/";
  } else {
    parts.host_port = url.substr(0, path_start);
    parts.path = url.substr(path_start);
  }
  return parts;
}

class RemoteClient {
 public:
  explicit RemoteClient(RemoteConfig cfg) : cfg_(std::move(cfg)) {}

  // POSTs the body and extracts {"words": [...]}. Retries with exponential
  // backoff; persistent failure logs and returns an empty list.
  std::vector<std::string> post_words(const nlohmann::json& body) {
    if (cfg_.url.empty()) {
      std::cerr << "remote endpoint: SHOBDOSETU_ENDPOINT_URL not set\n";
      return {};
    }
    const UrlParts parts = split_url(cfg_.url);
    double delay_s = 0.5;
    for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(
            std::chrono::milliseconds(static_cast<long>(delay_s * 1000)));
        delay_s *= 2.0;
      }
      httplib::Client client(parts.host_port);
      client.set_connection_timeout(std::chrono::milliseconds(
          static_cast<long>(cfg_.timeout_s * 1000)));
      client.set_read_timeout(std::chrono::milliseconds(
          static_cast<long>(cfg_.timeout_s * 1000)));
      httplib::Headers headers;
      if (!cfg_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + cfg_.api_key);
      }
      auto res = client.Post(parts.path, headers, body.dump(), "application/json");
      if (!res || res->status < 200 || res->status >= 300) continue;
      nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("words") ||
          !j["words"].is_array()) {
        continue;
      }
      std::vector<std::string> words;
      for (const auto& w : j["words"]) {
        if (w.is_string()) words.push_back(w.get<std::string>());
      }
      return words;
    }
    std::cerr << "remote endpoint: giving up after " << (cfg_.retries + 1)
              << " attempts\n";
    return {};
  }

 private:
  RemoteConfig cfg_;
};

class RemoteEndpointProvider final : public EndpointProvider {
 public:
  explicit RemoteEndpointProvider(RemoteConfig cfg) : client_(std::move(cfg)) {}

  std::vector<std::string> predict(const std::string& chunk_id,
                                   const audio::AudioClip& tail) override {
    const std::vector<unsigned char> wav =
        audio::encode_wav(tail, audio::WavEncoding::Pcm16);
    nlohmann::json body = {
        {"task", "endpoint"},
        {"chunk_id", chunk_id},
        {"sample_rate_hz", tail.sample_rate_hz},
        {"audio_base64", base64_encode(wav.data(), wav.size())},
    };
    return client_.post_words(body);
  }

 private:
  RemoteClient client_;
};

class RemoteReplacementProvider final : public ReplacementProvider {
 public:
  explicit RemoteReplacementProvider(RemoteConfig cfg) : client_(std::move(cfg)) {}

  std::vector<std::string> replacements(const std::string& chunk_id,
                                        const std::vector<std::string>& tokens,
                                        const std::vector<std::size_t>& positions) override {
    nlohmann::json body = {
        {"task", "replace"},
        {"chunk_id", chunk_id},
        {"tokens", tokens},
        {"positions", positions},
    };
    return client_.post_words(body);
  }

 private:
  RemoteClient client_;
};

}  // namespace

RemoteConfig remote_config_from_env() {
  RemoteConfig cfg;
  if (const char* url = std::getenv("SHOBDOSETU_ENDPOINT_URL")) cfg.url = url;
  if (const char* key = std::getenv("SHOBDOSETU_ENDPOINT_API_KEY")) cfg.api_key = key;
  return cfg;
}

std::unique_ptr<EndpointProvider> make_file_endpoint_provider(
    const std::filesystem::path& jsonl_path) {
  return std::make_unique<FileEndpointProvider>(jsonl_path);
}

std::unique_ptr<ReplacementProvider> make_file_replacement_provider(
    const std::filesystem::path& jsonl_path) {
  return std::make_unique<FileReplacementProvider>(jsonl_path);
}

std::unique_ptr<EndpointProvider> make_remote_endpoint_provider(RemoteConfig cfg) {
  return std::make_unique<RemoteEndpointProvider>(std::move(cfg));
}

std::unique_ptr<ReplacementProvider> make_remote_replacement_provider(RemoteConfig cfg) {
  return std::make_unique<RemoteReplacementProvider>(std::move(cfg));
}

}  // namespace shobdosetu::corpus
