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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shobdosetu/config.hpp"
#include "shobdosetu/der.hpp"
#include "shobdosetu/diarpost.hpp"
#include "shobdosetu/errors.hpp"
#include "shobdosetu/manifest.hpp"
#include "shobdosetu/metrics.hpp"
#include "shobdosetu/pipeline.hpp"
#include "shobdosetu/rttm.hpp"

namespace {

namespace fs = std::filesystem;
using namespace shobdosetu;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::EmptyReference:
    case Errc::EmptyCorpus:
      return 3;
    default:
      return 2;
  }
}

void emit(const nlohmann::json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) raise(Errc::IoFailure, "cannot write " + out_path);
  out << report.dump(2) << "\n";
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::NotFound, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// RTTM input: a single file or a directory of *.rttm files.
std::vector<metrics::Annotation> load_rttm_any(const fs::path& path) {
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path)) {
      if (e.is_regular_file() && e.path().extension() == ".rttm") {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) raise(Errc::NotFound, "no .rttm files in " + path.string());
    std::vector<metrics::Annotation> all;
    for (const auto& f : files) {
      for (auto& ann : metrics::parse_rttm_file(f)) all.push_back(std::move(ann));
    }
    return all;
  }
  return metrics::parse_rttm_file(path);
}

struct BuildCorpusArgs {
  std::string chunks, audio_dir, out_manifest;
  std::string endpoint_file, replace_file, nonspeech;
  bool endpoint_remote = false, replace_remote = false;
  std::string config_path;
  double threshold = -1.0, ratio = -1.0, tail = -1.0;
  std::optional<uint64_t> seed;
  int jobs = 1;
};

int cmd_build_corpus(const BuildCorpusArgs& args) {
  ToolkitConfig cfg = args.config_path.empty()
                          ? ToolkitConfig::defaults()
                          : ToolkitConfig::load(args.config_path);

  pipeline::BuildCorpusOptions opts;
  opts.chunks_path = args.chunks;
  opts.audio_dir = args.audio_dir;
  opts.fuzzy_threshold = args.threshold >= 0.0 ? args.threshold : cfg.fuzzy_threshold;
  opts.split_ratio = args.ratio > 0.0 ? args.ratio : cfg.split_ratio;
  opts.tail_s = args.tail > 0.0 ? args.tail : cfg.tail_s;
  opts.master_seed = args.seed.value_or(cfg.master_seed);
  opts.jobs = args.jobs;
  if (!args.nonspeech.empty()) opts.nonspeech_zones = fs::path(args.nonspeech);

  std::unique_ptr<corpus::EndpointProvider> endpoint;
  if (!args.endpoint_file.empty()) {
    endpoint = corpus::make_file_endpoint_provider(args.endpoint_file);
  } else if (args.endpoint_remote) {
    corpus::RemoteConfig rc = corpus::remote_config_from_env();
    if (rc.url.empty()) rc.url = cfg.endpoint.url;
    rc.timeout_s = cfg.endpoint.timeout_s;
    rc.max_inflight = cfg.endpoint.max_inflight;
    rc.retries = cfg.endpoint.retries;
    opts.jobs = std::max(1, std::min(opts.jobs, rc.max_inflight));
    endpoint = corpus::make_remote_endpoint_provider(rc);
  } else {
    raise(Errc::BadConfig,
          "an endpoint predictor is required (--endpoint-file or --endpoint-remote)");
  }
  opts.endpoint = endpoint.get();

  std::unique_ptr<corpus::ReplacementProvider> replacer;
  if (!args.replace_file.empty()) {
    replacer = corpus::make_file_replacement_provider(args.replace_file);
  } else if (args.replace_remote) {
    corpus::RemoteConfig rc = corpus::remote_config_from_env();
    if (rc.url.empty()) rc.url = cfg.endpoint.url;
    replacer = corpus::make_remote_replacement_provider(rc);
  }
  opts.replacer = replacer.get();

  pipeline::BuildCorpusResult result = pipeline::build_corpus(opts);
  corpus::write_manifest(args.out_manifest, result.entries);

  nlohmann::json summary = result.summary.to_json();
  summary["manifest"] = args.out_manifest;
  std::cerr << "build-corpus: kept " << result.summary.kept << ", replaced "
            << result.summary.replaced << ", dropped " << result.summary.dropped
            << ", unvalidated " << result.summary.unvalidated << ", skipped "
            << result.summary.skipped << "\n";
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct AugmentArgs {
  std::string manifest, audio_dir, out_dir, out_manifest;
  std::size_t count = 0;
  std::optional<uint64_t> seed;
  int jobs = 1;
  bool bg_noise = false;
  std::string encoding = "pcm16";
  std::string config_path;
};

int cmd_augment(const AugmentArgs& args) {
  ToolkitConfig cfg = args.config_path.empty()
                          ? ToolkitConfig::defaults()
                          : ToolkitConfig::load(args.config_path);

  pipeline::AugmentBatchOptions opts;
  opts.manifest_in = args.manifest;
  opts.audio_dir = args.audio_dir;
  opts.out_dir = args.out_dir;
  opts.count = args.count;
  opts.master_seed = args.seed.value_or(cfg.master_seed);
  opts.ranges = cfg.ranges;
  opts.split_ratio = cfg.split_ratio;
  opts.background_noise = args.bg_noise;
  opts.noise_dir = cfg.noise_dir;
  opts.snr_lo_db = cfg.snr_lo_db;
  opts.snr_hi_db = cfg.snr_hi_db;
  opts.jobs = args.jobs;
  if (args.encoding == "pcm16") {
    opts.encoding = audio::WavEncoding::Pcm16;
  } else if (args.encoding == "float32") {
    opts.encoding = audio::WavEncoding::Float32;
  } else {
    raise(Errc::BadConfig, "encoding must be pcm16 or float32");
  }

  pipeline::AugmentBatchResult result = pipeline::augment_batch(opts);

  const std::string manifest_path =
      args.out_manifest.empty() ? (fs::path(args.out_dir) / "manifest.jsonl").string()
                                : args.out_manifest;
  corpus::write_manifest(manifest_path, result.entries);

  std::size_t train = 0;
  for (const auto& e : result.entries) {
    if (e.split == corpus::Split::Train) ++train;
  }
  nlohmann::json summary = {
      {"count", result.entries.size()},
      {"covered_mic", result.covered_mic},
      {"underwater", result.underwater},
      {"train", train},
      {"val", result.entries.size() - train},
      {"manifest", manifest_path},
  };
  std::cerr << "augment: " << result.entries.size() << " chunks ("
            << result.covered_mic << " covered-mic, " << result.underwater
            << " underwater)\n";
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_score_wer(const std::string& ref_path, const std::string& hyp_path,
                  const std::string& pairs_path, bool strip_punct,
                  const std::string& out_path) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!pairs_path.empty()) {
    for (const std::string& line : read_lines(pairs_path)) {
      if (line.empty()) continue;
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("ref") || !j.contains("hyp")) {
        raise(Errc::MalformedDocument, "pairs lines need {\"ref\", \"hyp\"}");
      }
      pairs.emplace_back(j["ref"].get<std::string>(), j["hyp"].get<std::string>());
    }
  } else {
    std::vector<std::string> refs = read_lines(ref_path);
    std::vector<std::string> hyps = read_lines(hyp_path);
    if (hyps.size() > refs.size()) {
      raise(Errc::MalformedDocument, "hypothesis has more lines than reference");
    }
    hyps.resize(refs.size());  // missing hypothesis lines score as empty
    for (std::size_t i = 0; i < refs.size(); ++i) {
      pairs.emplace_back(refs[i], hyps[i]);
    }
  }

  metrics::WerReport pooled = metrics::corpus_wer(pairs, strip_punct);

  // Per-pair mean is reported alongside; the pooled number is primary.
  double mean = 0.0;
  std::size_t scored = 0;
  for (const auto& [ref, hyp] : pairs) {
    metrics::WerReport r = metrics::wer(ref, hyp, strip_punct);
    if (r.alignment.ref_count > 0) {
      mean += r.wer_percent;
      ++scored;
    }
  }
  nlohmann::json report = pooled.to_json();
  report["pairs"] = pairs.size();
  report["per_pair_mean_percent"] = scored ? mean / static_cast<double>(scored) : 0.0;
  emit(report, out_path);
  return 0;
}

int cmd_score_der(const std::string& ref_path, const std::string& hyp_path,
                  double collar_s, const std::string& out_path) {
  std::vector<metrics::Annotation> refs = load_rttm_any(ref_path);
  std::vector<metrics::Annotation> hyps = load_rttm_any(hyp_path);

  metrics::DerReport report =
      refs.size() == 1 && hyps.size() == 1 && refs[0].uri == hyps[0].uri
          ? metrics::der(refs[0], hyps[0], collar_s)
          : metrics::der_pooled(refs, hyps, collar_s);
  nlohmann::json j = report.to_json();
  j["recordings"] = refs.size();
  emit(j, out_path);
  return 0;
}

int cmd_post(const std::string& hyp_path, const diarpost::PostParams& params,
             const std::string& out_path) {
  std::vector<metrics::Annotation> anns = load_rttm_any(hyp_path);
  for (auto& a : anns) a = diarpost::apply_post(a, params);
  if (out_path.empty()) {
    metrics::write_rttm(std::cout, anns);
  } else {
    metrics::write_rttm_file(out_path, anns);
  }
  return 0;
}

int cmd_grid_search(const std::string& config_path, const std::string& hyp_path,
                    const std::string& ref_path, double collar_s, int jobs,
                    const std::string& out_path) {
  ToolkitConfig cfg = ToolkitConfig::load(config_path);
  if (cfg.grid.dims.empty()) {
    raise(Errc::BadConfig, "config has no \"grid\" section");
  }
  std::vector<metrics::Annotation> hyps = load_rttm_any(hyp_path);
  std::vector<metrics::Annotation> refs = load_rttm_any(ref_path);

  diarpost::GridResult result =
      diarpost::grid_search(cfg.grid, hyps, refs, collar_s, jobs);

  // Human-readable table on stderr, machine-readable JSON on stdout/--out.
  std::cerr << "grid-search: " << result.table.size() << " points\n";
  for (std::size_t i = 0; i < result.table.size(); ++i) {
    const auto& [point, der] = result.table[i];
    std::cerr << (i == result.best_index ? " >" : "  ");
    for (const auto& [name, value] : point) {
      std::cerr << " " << name << "=" << value;
    }
    std::cerr << "  der=" << der << "\n";
  }
  emit(result.to_json(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shobdosetu-forge: Bengali long-form speech data toolkit"};
  app.require_subcommand(1);

  // build-corpus
  BuildCorpusArgs bc;
  auto* build = app.add_subcommand(
      "build-corpus", "Construct a training manifest from subtitle chunks");
  build->add_option("chunks", bc.chunks, "Chunk JSON file or directory")->required();
  build->add_option("audio_dir", bc.audio_dir, "Directory with <source>.wav files")
      ->required();
  build->add_option("--out", bc.out_manifest, "Output manifest JSONL")->required();
  build->add_option("--endpoint-file", bc.endpoint_file,
                    "JSONL lookup table for endpoint predictions");
  build->add_flag("--endpoint-remote", bc.endpoint_remote,
                  "Use the HTTP endpoint predictor (env SHOBDOSETU_ENDPOINT_URL)");
  build->add_option("--replace-file", bc.replace_file,
                    "JSONL lookup table for Devanagari token replacements");
  build->add_flag("--replace-remote", bc.replace_remote,
                  "Use the HTTP replacement provider");
  build->add_option("--nonspeech", bc.nonspeech, "Non-speech zones JSON");
  build->add_option("--threshold", bc.threshold, "Fuzzy match threshold");
  build->add_option("--ratio", bc.ratio, "Train split ratio");
  build->add_option("--tail", bc.tail, "Audio tail seconds for endpoint prediction");
  build->add_option("--seed", bc.seed, "Master seed");
  build->add_option("--jobs", bc.jobs, "Worker count (outputs are identical)");
  build->add_option("--config", bc.config_path, "Toolkit config JSON");

  // augment
  AugmentArgs au;
  auto* aug = app.add_subcommand("augment", "Generate degraded training chunks");
  aug->add_option("manifest", au.manifest, "Source manifest JSONL")->required();
  aug->add_option("audio_dir", au.audio_dir, "Directory the manifest paths are relative to")
      ->required();
  aug->add_option("--out-dir", au.out_dir, "Output directory for WAVs")->required();
  aug->add_option("--out", au.out_manifest,
                  "Output manifest (default <out-dir>/manifest.jsonl)");
  aug->add_option("--count", au.count, "Number of augmented chunks")->required();
  aug->add_option("--seed", au.seed, "Master seed");
  aug->add_option("--jobs", au.jobs, "Worker count (outputs are identical)");
  aug->add_flag("--bg-noise", au.bg_noise,
                "Also mix background noise before the final normalization");
  aug->add_option("--encoding", au.encoding, "WAV encoding: pcm16 or float32");
  aug->add_option("--config", au.config_path, "Toolkit config JSON");

  // score-wer
  std::string sw_ref, sw_hyp, sw_pairs, sw_out;
  bool sw_strip = false;
  auto* score_wer = app.add_subcommand("score-wer", "Word error rate");
  score_wer->add_option("ref", sw_ref, "Reference transcript file (one line per utterance)");
  score_wer->add_option("hyp", sw_hyp, "Hypothesis transcript file");
  score_wer->add_option("--pairs", sw_pairs, "JSONL with {\"ref\", \"hyp\"} per line");
  score_wer->add_flag("--strip-punct", sw_strip, "Strip edge punctuation from tokens");
  score_wer->add_option("--out", sw_out, "Write the JSON report here instead of stdout");

  // score-der
  std::string sd_ref, sd_hyp, sd_out;
  double sd_collar = 0.0;
  auto* score_der = app.add_subcommand("score-der", "Diarization error rate");
  score_der->add_option("ref", sd_ref, "Reference RTTM file or directory")->required();
  score_der->add_option("hyp", sd_hyp, "Hypothesis RTTM file or directory")->required();
  score_der->add_option("--collar", sd_collar, "Scoring collar in seconds");
  score_der->add_option("--out", sd_out, "Write the JSON report here instead of stdout");

  // post
  std::string po_hyp, po_out;
  diarpost::PostParams po_params;
  auto* post = app.add_subcommand("post", "Diarization post-processing");
  post->add_option("hyp", po_hyp, "Hypothesis RTTM file or directory")->required();
  post->add_option("--min-duration-off", po_params.min_duration_off_s,
                   "Merge same-speaker gaps shorter than this");
  post->add_option("--round", po_params.round_granularity_s,
                   "Round boundaries to this granularity (0 = off)");
  post->add_option("--min-segment", po_params.min_segment_s,
                   "Drop segments shorter than this after merging");
  post->add_option("--out", po_out, "Output RTTM (default stdout)");

  // grid-search
  std::string gs_config, gs_hyp, gs_ref, gs_out;
  double gs_collar = 0.0;
  int gs_jobs = 1;
  auto* grid = app.add_subcommand("grid-search",
                                  "Exhaustive post-processing parameter search");
  grid->add_option("--config", gs_config, "Toolkit config JSON with a \"grid\" section")
      ->required();
  grid->add_option("--hyp", gs_hyp, "Hypothesis RTTM file or directory")->required();
  grid->add_option("--ref", gs_ref, "Reference RTTM file or directory")->required();
  grid->add_option("--collar", gs_collar, "Scoring collar in seconds");
  grid->add_option("--jobs", gs_jobs, "Worker count (results are identical)");
  grid->add_option("--out", gs_out, "Write the JSON result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build_corpus(bc);
    if (aug->parsed()) return cmd_augment(au);
    if (score_wer->parsed()) {
      if (sw_pairs.empty() && (sw_ref.empty() || sw_hyp.empty())) {
        std::cerr << "score-wer needs REF and HYP files, or --pairs\n";
        return 2;
      }
      return cmd_score_wer(sw_ref, sw_hyp, sw_pairs, sw_strip, sw_out);
    }
    if (score_der->parsed()) return cmd_score_der(sd_ref, sd_hyp, sd_collar, sd_out);
    if (post->parsed()) return cmd_post(po_hyp, po_params, po_out);
    if (grid->parsed()) {
      return cmd_grid_search(gs_config, gs_hyp, gs_ref, gs_collar, gs_jobs, gs_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
