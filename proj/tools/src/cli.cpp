// Copyright 2026 The wtasep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wtasep_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wtasep/affinity.hpp"
#include "wtasep/bss_eval.hpp"
#include "wtasep/dictionary.hpp"
#include "wtasep/dictionary_io.hpp"
#include "wtasep/error.hpp"
#include "wtasep/knn.hpp"
#include "wtasep/rng.hpp"
#include "wtasep/separator.hpp"
#include "wtasep/synth.hpp"
#include "wtasep/wav.hpp"

namespace wtasep::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Named {
  std::string id;
  AudioBuffer audio;
};

std::vector<fs::path> list_wavs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (entry.is_regular_file() && ext == ".wav") files.push_back(entry.path());
  }
  if (files.empty()) throw UsageError("no input files in " + dir.string());
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<Named> load_dir(const fs::path& dir) {
  std::vector<Named> out;
  for (const auto& path : list_wavs(dir)) out.push_back({path.stem().string(), read_wav(path)});
  return out;
}

// Noise recordings shorter than the utterance are repeated.
AudioBuffer fit_length(const AudioBuffer& noise, std::size_t length) {
  AudioBuffer out{std::vector<double>(length), noise.sample_rate};
  for (std::size_t i = 0; i < length; ++i) out.samples[i] = noise.samples[i % noise.size()];
  return out;
}

struct EvalItem {
  std::string utterance_id;
  std::string noise_id;
  AudioBuffer speech;
  MixResult mix;
};

// Every speech file mixed with every noise file.
std::vector<EvalItem> make_pairs(const std::vector<Named>& speech, const std::vector<Named>& noise, double snr_db) {
  std::vector<EvalItem> items;
  for (const auto& s : speech) {
    for (const auto& n : noise) {
      if (s.audio.sample_rate != n.audio.sample_rate) {
        throw InvalidArgument("sample rate of " + s.id + " (" + std::to_string(s.audio.sample_rate) +
                              ") differs from " + n.id + " (" + std::to_string(n.audio.sample_rate) + ")");
      }
      items.push_back({s.id, n.id, s.audio, mix_at_snr({s.audio, fit_length(n.audio, s.audio.size()), snr_db})});
    }
  }
  return items;
}

struct Common {
  bool require_seed = false;
};

struct SeedOption {
  std::uint64_t value = 0;
  CLI::Option* option = nullptr;

  bool given() const { return option != nullptr && option->count() > 0; }
  std::optional<std::uint64_t> get() const { return given() ? std::optional(value) : std::nullopt; }
};

void add_seed(CLI::App* app, SeedOption& seed) {
  seed.option = app->add_option("--seed", seed.value, "Seed for permutation tables and other random choices");
}

void check_seed(const Common& common, const SeedOption& seed, const std::string& command) {
  if (common.require_seed && !seed.given()) {
    throw UsageError(command + ": --seed is required when --require-seed is set");
  }
}

struct KnnOptions {
  std::size_t k = 5;
  std::size_t m = 6;
  std::size_t l = 100;
  std::size_t tables = 1;
  std::string mode = "hamming";
  unsigned threads = 1;
  SeedOption seed;
};

void add_knn_options(CLI::App* app, KnnOptions& o, bool with_mode = true) {
  app->add_option("--k", o.k, "Number of nearest neighbors")->capture_default_str();
  app->add_option("--m", o.m, "WTA window size M")->capture_default_str();
  app->add_option("--l", o.l, "Number of WTA codes per frame L")->capture_default_str();
  app->add_option("--tables", o.tables, "Independent permutation tables whose masks are averaged")
      ->capture_default_str();
  if (with_mode) {
    app->add_option("--mode", o.mode, "Similarity: hamming or cosine")
        ->check(CLI::IsMember({"hamming", "cosine"}))
        ->capture_default_str();
  }
  app->add_option("--threads", o.threads, "Worker threads for the frame search")->capture_default_str();
  add_seed(app, o.seed);
}

SeparatorParams to_params(const KnnOptions& o, const SeparationDictionary& dict) {
  SeparatorParams p;
  p.k = o.k;
  p.subsample = o.m;
  p.code_length = o.l;
  p.tables = o.tables;
  p.mode = parse_similarity_mode(o.mode);
  p.seed = o.seed.get();
  p.threads = std::max(1U, o.threads);
  try {
    validate(p);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (p.mode == SimilarityMode::kHamming && p.subsample > dict.features.dim()) {
    throw UsageError("M=" + std::to_string(p.subsample) + " exceeds the feature dimension D=" +
                     std::to_string(dict.features.dim()));
  }
  return p;
}

bool uses_hashing(const KnnOptions& o) { return o.mode == "hamming"; }

std::string format_db(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path.string());
}

// ---------------------------------------------------------------- build-dict

struct BuildDictOptions {
  std::string speech_dir;
  std::string noise_dir;
  std::string out;
  double snr_db = 0.0;
  std::string feature = "mel";
  std::size_t mel_bands = 40;
  std::size_t window = 1024;
  std::size_t hop = 512;
  bool no_codes = false;
  std::size_t m = 6;
  std::size_t l = 100;
  SeedOption seed;
};

int build_dict(const Common& common, const BuildDictOptions& o, std::ostream& out) {
  if (!o.no_codes) check_seed(common, o.seed, "build-dict");
  FrontendConfig frontend;
  frontend.stft = StftConfig{o.window, o.hop};
  frontend.mel.bands = o.mel_bands;
  try {
    frontend.kind = parse_feature_kind(o.feature);
    validate(frontend.stft);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }

  const auto speech = load_dir(o.speech_dir);
  const auto noise = load_dir(o.noise_dir);
  std::vector<MixSpec> pairs;
  for (const auto& item : make_pairs(speech, noise, o.snr_db)) {
    pairs.push_back({item.speech, item.mix.scaled_noise, o.snr_db});
  }
  auto dict = build_dictionary(pairs, frontend);
  if (!o.no_codes) {
    if (o.m > dict.features.dim()) throw UsageError("M exceeds the feature dimension");
    attach_codes(dict, HashParams{o.l, o.m, o.seed.value});
  }
  save(dict, o.out);

  const std::size_t d = dict.features.dim();
  const std::size_t float_bytes = d * sizeof(float);
  out << "pairs: " << pairs.size() << " (" << speech.size() << " speech x " << noise.size() << " noise)\n";
  out << "frames (T): " << dict.frames() << "\n";
  out << "feature dim (D): " << d << " (" << to_string(frontend.kind) << ")\n";
  out << "frequency bins (F): " << dict.ibm.cols() << "\n";
  out << "file size: " << fs::file_size(o.out) << " bytes\n";
  out << "float features: " << float_bytes << " bytes/frame\n";
  if (dict.codes) {
    const auto& layout = dict.codes->layout();
    out << "packed codes: " << layout.row_bytes() << " bytes/frame (L=" << layout.code_length
        << ", M=" << layout.subsample << ", " << layout.bits_per_code << " bits/code, seed=" << o.seed.value << ")\n";
    out << "compression ratio: " << std::fixed << std::setprecision(2)
        << static_cast<double>(float_bytes) / static_cast<double>(layout.row_bytes()) << "x\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------ separate

struct SeparateOptions {
  std::string dict;
  std::string in;
  std::string out;
  bool pcm16 = false;
  KnnOptions knn;
};

int separate_cmd(const Common& common, const SeparateOptions& o, std::ostream& out) {
  if (uses_hashing(o.knn)) check_seed(common, o.knn.seed, "separate");
  const auto dict = load(o.dict);
  const auto params = to_params(o.knn, dict);
  const auto mixture = read_wav(o.in);
  const Separator separator(dict, params);
  const auto result = separator.separate(mixture);
  write_wav(o.out, result.audio, o.pcm16 ? WavSampleFormat::kPcm16 : WavSampleFormat::kFloat32);
  const auto& t = result.timings;
  out << std::fixed << std::setprecision(4);
  out << "frames: " << result.mask.frames << "\n";
  out << "timing: features " << t.features_s << " s, hash " << t.hash_s << " s, search " << t.search_s
      << " s, reconstruct " << t.reconstruct_s << " s\n";
  return kExitOk;
}

// ---------------------------------------------------------------------- eval

struct ScoreRow {
  std::string utterance_id;
  std::string noise_id;
  std::string mode;
  std::optional<std::size_t> k, m, l;
  BssScores scores;
};

std::string csv_header() { return "utterance_id,noise_id,mode,K,M,L,sdr,sir,sar\n"; }

std::string csv_row(const ScoreRow& r) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  return r.utterance_id + "," + r.noise_id + "," + r.mode + "," + opt(r.k) + "," + opt(r.m) + "," + opt(r.l) + "," +
         format_db(r.scores.sdr) + "," + format_db(r.scores.sir) + "," + format_db(r.scores.sar) + "\n";
}

nlohmann::json json_row(const ScoreRow& r) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"utterance_id", r.utterance_id}, {"noise_id", r.noise_id}, {"mode", r.mode},
          {"K", opt(r.k)},  {"M", opt(r.m)},  {"L", opt(r.l)},
          {"sdr", r.scores.sdr}, {"sir", r.scores.sir}, {"sar", r.scores.sar}};
}

struct EvalOptions {
  std::string dict;
  std::string speech_dir;
  std::string noise_dir;
  double snr_db = 0.0;
  std::vector<std::string> modes{"hamming", "cosine", "oracle", "mixture"};
  std::string csv;
  std::string json;
  KnnOptions knn;
};

int eval_cmd(const Common& common, const EvalOptions& o, std::ostream& out) {
  if (std::find(o.modes.begin(), o.modes.end(), "hamming") != o.modes.end()) check_seed(common, o.knn.seed, "eval");
  const auto dict = load(o.dict);
  const auto items = make_pairs(load_dir(o.speech_dir), load_dir(o.noise_dir), o.snr_db);

  std::map<std::string, std::optional<Separator>> separators;
  for (const auto& mode : o.modes) {
    if (mode == "hamming" || mode == "cosine") {
      KnnOptions knn = o.knn;
      knn.mode = mode;
      separators[mode].emplace(dict, to_params(knn, dict));
    }
  }

  std::vector<ScoreRow> rows;
  for (const auto& item : items) {
    const auto& mixture = item.mix.mixture;
    if (mixture.sample_rate != dict.meta.sample_rate) {
      throw InvalidArgument("evaluation audio is " + std::to_string(mixture.sample_rate) + " Hz, dictionary is " +
                            std::to_string(dict.meta.sample_rate) + " Hz");
    }
    for (const auto& mode : o.modes) {
      ScoreRow row{item.utterance_id, item.noise_id, mode, std::nullopt, std::nullopt, std::nullopt, {}};
      AudioBuffer estimate;
      if (mode == "mixture") {
        estimate = mixture;
      } else if (mode == "oracle") {
        estimate = oracle_irm_separate(item.speech, item.mix.scaled_noise, dict.meta.frontend.stft);
      } else {
        estimate = separators.at(mode)->separate(mixture).audio;
        row.k = o.knn.k;
        if (mode == "hamming") {
          row.m = o.knn.m;
          row.l = o.knn.l;
        }
      }
      row.scores = bss_eval(estimate, item.speech, item.mix.scaled_noise);
      rows.push_back(row);
    }
  }

  std::string csv = csv_header();
  nlohmann::json json = nlohmann::json::array();
  for (const auto& r : rows) {
    csv += csv_row(r);
    json.push_back(json_row(r));
  }
  if (!o.csv.empty()) write_text(o.csv, csv);
  if (!o.json.empty()) write_text(o.json, json.dump(2) + "\n");
  if (o.csv.empty() && o.json.empty()) out << csv;

  out << "mean over " << items.size() << " mixtures:\n";
  for (const auto& mode : o.modes) {
    double sdr = 0, sir = 0, sar = 0;
    for (const auto& r : rows) {
      if (r.mode != mode) continue;
      sdr += r.scores.sdr;
      sir += r.scores.sir;
      sar += r.scores.sar;
    }
    const double n = static_cast<double>(items.size());
    out << "  " << std::left << std::setw(8) << mode << " sdr " << format_db(sdr / n) << "  sir " << format_db(sir / n)
        << "  sar " << format_db(sar / n) << "\n";
  }
  return kExitOk;
}

// --------------------------------------------------------------- grid-search

struct GridOptions {
  std::string dict;
  std::string speech_dir;
  std::string noise_dir;
  double snr_db = 0.0;
  std::vector<std::size_t> k_list{1, 5, 10};
  std::vector<std::size_t> m_list{2, 4, 6};
  std::string out;
  KnnOptions knn;
};

int grid_search(const Common& common, const GridOptions& o, std::ostream& out, std::ostream& err) {
  check_seed(common, o.knn.seed, "grid-search");
  const auto dict = load(o.dict);
  const auto items = make_pairs(load_dir(o.speech_dir), load_dir(o.noise_dir), o.snr_db);

  std::string csv = "K\\M";
  for (auto m : o.m_list) csv += "," + std::to_string(m);
  csv += "\n";
  double best = -std::numeric_limits<double>::infinity();
  std::optional<std::pair<std::size_t, std::size_t>> best_cell;
  for (auto k : o.k_list) {
    csv += std::to_string(k);
    for (auto m : o.m_list) {
      KnnOptions knn = o.knn;
      knn.k = k;
      knn.m = m;
      knn.mode = "hamming";
      try {
        const Separator separator(dict, to_params(knn, dict));
        double sum = 0.0;
        for (const auto& item : items) {
          sum += bss_eval(separator.separate(item.mix.mixture).audio, item.speech, item.mix.scaled_noise).sdr;
        }
        const double mean = sum / static_cast<double>(items.size());
        csv += "," + format_db(mean);
        if (mean > best) {
          best = mean;
          best_cell = {k, m};
        }
      } catch (const std::exception& e) {
        err << "K=" << k << " M=" << m << ": " << e.what() << "\n";
        csv += ",error";
      }
    }
    csv += "\n";
  }
  if (o.out.empty()) {
    out << csv;
  } else {
    write_text(o.out, csv);
  }
  if (!best_cell) {
    err << "every grid cell failed\n";
    return kExitFailure;
  }
  out << "best: K=" << best_cell->first << " M=" << best_cell->second << " mean SDR " << format_db(best) << " dB\n";
  return kExitOk;
}

// ---------------------------------------------------------------- hash-stats

struct HashStatsOptions {
  std::string dict;
  std::string out_dir = ".";
  std::size_t max_frames = 500;
  std::size_t m = 6;
  std::size_t l = 100;
  SeedOption seed;
};

std::string matrix_csv(const AffinityMatrix& a, std::span<const std::size_t> rows) {
  std::ostringstream s;
  s << "frame";
  for (auto r : rows) s << "," << r;
  s << "\n" << std::setprecision(6);
  for (std::size_t i = 0; i < a.size; ++i) {
    s << rows[i];
    for (std::size_t j = 0; j < a.size; ++j) s << "," << a.at(i, j);
    s << "\n";
  }
  return s.str();
}

// Stored codes when they match the requested (L, M, seed), fresh ones otherwise.
HashCodes codes_for(const SeparationDictionary& dict, std::size_t l, std::size_t m, std::uint64_t seed) {
  if (dict.codes && dict.meta.hash == HashParams{l, m, seed}) return *dict.codes;
  if (m > dict.features.dim()) throw UsageError("M exceeds the feature dimension");
  return hash_matrix(dict.features, generate_permutations(seed, l, m, dict.features.dim()));
}

std::uint64_t resolve_seed(const SeedOption& seed, const SeparationDictionary& dict) {
  return seed.given() ? seed.value : (dict.meta.hash ? dict.meta.hash->seed : 0);
}

int hash_stats(const Common& common, const HashStatsOptions& o, std::ostream& out) {
  check_seed(common, o.seed, "hash-stats");
  if (o.max_frames < 2 || o.max_frames > 500) throw UsageError("--max-frames must be in [2, 500]");
  const auto dict = load(o.dict);
  const auto codes = codes_for(dict, o.l, o.m, resolve_seed(o.seed, dict));
  const auto rows = evenly_spaced_rows(dict.frames(), o.max_frames);
  if (rows.size() < 2) throw InvalidArgument("dictionary needs at least two frames");
  const auto cos = cosine_affinity(dict.features, rows);
  const auto ham = hamming_affinity(codes, rows);
  const double rho = affinity_correlation(cos, ham);
  fs::create_directories(o.out_dir);
  write_text(fs::path(o.out_dir) / "cosine_affinity.csv", matrix_csv(cos, rows));
  write_text(fs::path(o.out_dir) / "hamming_affinity.csv", matrix_csv(ham, rows));
  out << "frames: " << rows.size() << " of " << dict.frames() << "\n";
  out << "spearman: " << std::fixed << std::setprecision(6) << rho << "\n";
  return kExitOk;
}

// --------------------------------------------------------------------- bench

struct BenchOptions {
  std::string dict;
  std::size_t queries = 200;
  std::size_t k = 5;
  std::size_t m = 6;
  std::size_t l = 100;
  SeedOption seed;
};

// FNV-1a over the neighbor indices of every query.
struct Digest {
  std::uint64_t value = 1469598103934665603ULL;
  void add(std::size_t x) {
    for (int b = 0; b < 8; ++b) {
      value ^= (x >> (8 * b)) & 0xFF;
      value *= 1099511628211ULL;
    }
  }
};

int bench(const Common& common, const BenchOptions& o, std::ostream& out) {
  check_seed(common, o.seed, "bench");
  if (o.queries == 0) throw UsageError("--queries must be positive");
  const auto dict = load(o.dict);
  if (dict.frames() < o.k) throw InvalidArgument("dictionary smaller than K");
  const std::uint64_t seed = resolve_seed(o.seed, dict);
  const auto codes = codes_for(dict, o.l, o.m, seed);
  const auto table = generate_permutations(seed, o.l, o.m, dict.features.dim());
  const auto queries = evenly_spaced_rows(dict.frames(), o.queries);

  const CosineIndex index(dict.features);
  Digest cos_digest, ham_digest;
  auto start = Clock::now();
  for (auto q : queries) {
    for (auto i : knn_search(dict.features.row(q), index, o.k).indices) cos_digest.add(i);
  }
  const double cos_s = seconds_since(start);

  std::vector<std::vector<std::uint64_t>> packed;
  for (auto q : queries) packed.push_back(hash_packed(dict.features.row(q), table));
  start = Clock::now();
  for (const auto& p : packed) {
    for (auto i : knn_search(p, codes, o.k).indices) ham_digest.add(i);
  }
  const double ham_s = seconds_since(start);

  const double n = static_cast<double>(queries.size());
  const std::size_t float_bytes = dict.features.dim() * sizeof(float);
  out << "frames (T): " << dict.frames() << ", D: " << dict.features.dim() << ", queries: " << queries.size()
      << ", K: " << o.k << "\n";
  out << std::fixed << std::setprecision(1);
  out << "cosine scan:  " << n / cos_s << " queries/s, " << float_bytes << " bytes/frame\n";
  out << "hamming scan: " << n / ham_s << " queries/s, " << codes.layout().row_bytes() << " bytes/frame (L="
      << o.l << ", M=" << o.m << ")\n";
  out << "speedup: " << std::setprecision(2) << cos_s / ham_s << "x\n";
  out << std::hex << "result digest: cosine " << cos_digest.value << ", hamming " << ham_digest.value << std::dec
      << "\n";
  return kExitOk;
}

// ------------------------------------------------------------- gen-synthetic

struct SynthOptions {
  std::string out_dir;
  std::size_t speech = 10;
  std::size_t noise = 4;
  double seconds = 2.0;
  int sample_rate = 16000;
  SeedOption seed;
};

int gen_synthetic(const Common& common, const SynthOptions& o, std::ostream& out) {
  check_seed(common, o.seed, "gen-synthetic");
  if (o.seconds <= 0.0 || o.sample_rate <= 0) throw UsageError("--seconds and --sample-rate must be positive");
  const auto length = static_cast<std::size_t>(o.seconds * o.sample_rate);
  const fs::path speech_dir = fs::path(o.out_dir) / "speech";
  const fs::path noise_dir = fs::path(o.out_dir) / "noise";
  fs::create_directories(speech_dir);
  fs::create_directories(noise_dir);
  auto name = [](const char* prefix, std::size_t i) {
    std::ostringstream s;
    s << prefix << std::setw(3) << std::setfill('0') << i << ".wav";
    return s.str();
  };
  for (std::size_t i = 0; i < o.speech; ++i) {
    write_wav(speech_dir / name("speech_", i),
              synth::harmonic_speech(derive_table_seed(o.seed.value, 2 * i + 1), length, o.sample_rate));
  }
  for (std::size_t i = 0; i < o.noise; ++i) {
    write_wav(noise_dir / name("noise_", i), synth::modulated_noise(derive_table_seed(o.seed.value, 2 * i + 2), length,
                                                                     static_cast<int>(i % 4), o.sample_rate));
  }
  out << "wrote " << o.speech << " speech and " << o.noise << " noise files to " << o.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Speech denoising with winner-take-all hashed nearest-neighbor dictionaries", "wtasep"};
  app.set_config("--config", "", "Config file of key=value lines; command-line flags take precedence");
  app.require_subcommand(1);
  Common common;
  app.add_flag("--require-seed", common.require_seed, "Fail unless randomized commands get an explicit --seed");

  BuildDictOptions bd;
  auto* bd_cmd = app.add_subcommand("build-dict", "Build a separation dictionary from speech and noise WAVs");
  bd_cmd->add_option("--speech-dir", bd.speech_dir, "Directory of clean speech WAVs")->required();
  bd_cmd->add_option("--noise-dir", bd.noise_dir, "Directory of noise WAVs")->required();
  bd_cmd->add_option("-o,--out", bd.out, "Output dictionary file")->required();
  bd_cmd->add_option("--snr", bd.snr_db, "Mixing SNR in dB")->capture_default_str();
  bd_cmd->add_option("--feature", bd.feature, "Feature kind: mel or stft")
      ->check(CLI::IsMember({"mel", "stft", "stft-magnitude"}))
      ->capture_default_str();
  bd_cmd->add_option("--mel-bands", bd.mel_bands, "Number of mel bands")->capture_default_str();
  bd_cmd->add_option("--window", bd.window, "STFT window length")->capture_default_str();
  bd_cmd->add_option("--hop", bd.hop, "STFT hop size")->capture_default_str();
  bd_cmd->add_flag("--no-codes", bd.no_codes, "Do not store precomputed WTA codes");
  bd_cmd->add_option("--m", bd.m, "WTA window size M of stored codes")->capture_default_str();
  bd_cmd->add_option("--l", bd.l, "Codes per frame L of stored codes")->capture_default_str();
  add_seed(bd_cmd, bd.seed);

  SeparateOptions sp;
  auto* sp_cmd = app.add_subcommand("separate", "Enhance one noisy WAV with a dictionary");
  sp_cmd->add_option("--dict", sp.dict, "Dictionary file")->required();
  sp_cmd->add_option("--in", sp.in, "Noisy input WAV")->required();
  sp_cmd->add_option("-o,--out", sp.out, "Enhanced output WAV")->required();
  sp_cmd->add_flag("--pcm16", sp.pcm16, "Write 16-bit PCM instead of 32-bit float");
  add_knn_options(sp_cmd, sp.knn);

  EvalOptions ev;
  auto* ev_cmd = app.add_subcommand("eval", "Score separation on speech x noise mixtures");
  ev_cmd->add_option("--dict", ev.dict, "Dictionary file")->required();
  ev_cmd->add_option("--speech-dir", ev.speech_dir, "Directory of clean test speech")->required();
  ev_cmd->add_option("--noise-dir", ev.noise_dir, "Directory of test noise")->required();
  ev_cmd->add_option("--snr", ev.snr_db, "Mixing SNR in dB")->capture_default_str();
  ev_cmd->add_option("--modes", ev.modes, "Any of hamming, cosine, oracle, mixture")
      ->check(CLI::IsMember({"hamming", "cosine", "oracle", "mixture"}))
      ->delimiter(',')
      ->capture_default_str();
  ev_cmd->add_option("--csv", ev.csv, "Write per-mixture scores as CSV");
  ev_cmd->add_option("--json", ev.json, "Write per-mixture scores as JSON");
  add_knn_options(ev_cmd, ev.knn, false);

  GridOptions gs;
  auto* gs_cmd = app.add_subcommand("grid-search", "Mean SDR over a grid of K and M");
  gs_cmd->add_option("--dict", gs.dict, "Dictionary file")->required();
  gs_cmd->add_option("--speech-dir", gs.speech_dir, "Directory of clean test speech")->required();
  gs_cmd->add_option("--noise-dir", gs.noise_dir, "Directory of test noise")->required();
  gs_cmd->add_option("--snr", gs.snr_db, "Mixing SNR in dB")->capture_default_str();
  gs_cmd->add_option("--k-list", gs.k_list, "Values of K")->delimiter(',')->capture_default_str();
  gs_cmd->add_option("--m-list", gs.m_list, "Values of M")->delimiter(',')->capture_default_str();
  gs_cmd->add_option("-o,--out", gs.out, "Write the K x M matrix as CSV");
  add_knn_options(gs_cmd, gs.knn, false);

  HashStatsOptions hs;
  auto* hs_cmd = app.add_subcommand("hash-stats", "Cosine vs Hamming self-affinity of dictionary frames");
  hs_cmd->add_option("--dict", hs.dict, "Dictionary file")->required();
  hs_cmd->add_option("--out-dir", hs.out_dir, "Directory for the affinity CSVs")->capture_default_str();
  hs_cmd->add_option("--max-frames", hs.max_frames, "Evenly spaced frames to compare (at most 500)")
      ->capture_default_str();
  hs_cmd->add_option("--m", hs.m, "WTA window size M")->capture_default_str();
  hs_cmd->add_option("--l", hs.l, "Codes per frame L")->capture_default_str();
  add_seed(hs_cmd, hs.seed);

  BenchOptions bn;
  auto* bn_cmd = app.add_subcommand("bench", "Cosine vs packed Hamming scan throughput");
  bn_cmd->add_option("--dict", bn.dict, "Dictionary file")->required();
  bn_cmd->add_option("--queries", bn.queries, "Number of queries drawn from the dictionary")->capture_default_str();
  bn_cmd->add_option("--k", bn.k, "Number of nearest neighbors")->capture_default_str();
  bn_cmd->add_option("--m", bn.m, "WTA window size M")->capture_default_str();
  bn_cmd->add_option("--l", bn.l, "Codes per frame L")->capture_default_str();
  add_seed(bn_cmd, bn.seed);

  SynthOptions gn;
  auto* gn_cmd = app.add_subcommand("gen-synthetic", "Write synthetic speech and noise WAVs");
  gn_cmd->add_option("--out-dir", gn.out_dir, "Output directory (speech/ and noise/ are created)")->required();
  gn_cmd->add_option("--speech", gn.speech, "Number of speech files")->capture_default_str();
  gn_cmd->add_option("--noise", gn.noise, "Number of noise files")->capture_default_str();
  gn_cmd->add_option("--seconds", gn.seconds, "Duration of each file")->capture_default_str();
  gn_cmd->add_option("--sample-rate", gn.sample_rate, "Sample rate in Hz")->capture_default_str();
  add_seed(gn_cmd, gn.seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bd_cmd->parsed()) return build_dict(common, bd, out);
    if (sp_cmd->parsed()) return separate_cmd(common, sp, out);
    if (ev_cmd->parsed()) return eval_cmd(common, ev, out);
    if (gs_cmd->parsed()) return grid_search(common, gs, out, err);
    if (hs_cmd->parsed()) return hash_stats(common, hs, out);
    if (bn_cmd->parsed()) return bench(common, bn, out);
    if (gn_cmd->parsed()) return gen_synthetic(common, gn, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace wtasep::cli
