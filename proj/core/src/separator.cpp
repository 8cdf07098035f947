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

#include "wtasep/separator.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <thread>

#include "wtasep/error.hpp"
#include "wtasep/rng.hpp"

namespace wtasep {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Splits [0, n) into contiguous chunks, one per worker. Each index is handled
// by exactly one call, so per-index results never depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

}  // namespace

void validate(const SeparatorParams& params) {
  if (params.k == 0) throw InvalidArgument("K must be at least 1");
  if (params.tables == 0) throw InvalidArgument("number of permutation tables must be at least 1");
  if (params.mode == SimilarityMode::kHamming) {
    if (params.subsample < 2) throw InvalidArgument("M must be at least 2");
    if (params.code_length == 0) throw InvalidArgument("L must be at least 1");
  }
  if (!params.table_seeds.empty() && params.table_seeds.size() != params.tables) {
    throw InvalidArgument("got " + std::to_string(params.table_seeds.size()) + " table seeds for " +
                          std::to_string(params.tables) + " tables");
  }
}

ComplexSpectrogram apply_mask(const RatioMask& mask, const ComplexSpectrogram& spec) {
  if (mask.frames != spec.frames() || mask.bins != spec.bins()) {
    throw InvalidArgument("mask shape does not match the spectrogram");
  }
  ComplexSpectrogram out = spec;
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    const auto masked = apply_mask(mask.frame(t), spec.frame(t));
    std::copy(masked.begin(), masked.end(), out.frame(t).begin());
  }
  return out;
}

Separator::Separator(const SeparationDictionary& dict, const SeparatorParams& params)
    : dict_(&dict), params_(params), extractor_(dict.meta.frontend, dict.meta.sample_rate) {
  validate(params_);
  validate(dict);
  if (dict.frames() < params_.k) {
    throw InvalidArgument("dictionary smaller than K (T=" + std::to_string(dict.frames()) +
                          ", K=" + std::to_string(params_.k) + ")");
  }

  if (params_.mode == SimilarityMode::kCosine) {
    cosine_.emplace(dict.features);
    return;
  }

  const std::uint64_t base_seed = params_.seed.value_or(dict.meta.hash ? dict.meta.hash->seed : 0);
  for (std::size_t i = 0; i < params_.tables; ++i) {
    const std::uint64_t seed = params_.table_seeds.empty() ? derive_table_seed(base_seed, i) : params_.table_seeds[i];
    tables_.push_back(generate_permutations(seed, params_.code_length, params_.subsample, dict.features.dim()));
    const HashParams wanted{params_.code_length, params_.subsample, seed};
    if (dict.codes && dict.meta.hash == wanted) {
      table_codes_.push_back(*dict.codes);
    } else {
      table_codes_.push_back(hash_matrix(dict.features, tables_.back()));
    }
  }
}

std::vector<double> Separator::estimate_frame_mask(std::span<const float> features) const {
  if (cosine_) return estimate_mask(knn_search(features, *cosine_, params_.k), dict_->ibm);

  std::vector<double> mask(dict_->ibm.cols(), 0.0);
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const auto query = hash_packed(features, tables_[i]);
    const auto part = estimate_mask(knn_search(query, table_codes_[i], params_.k), dict_->ibm);
    for (std::size_t f = 0; f < mask.size(); ++f) mask[f] += part[f];
  }
  if (tables_.size() > 1) {
    for (double& v : mask) v /= static_cast<double>(tables_.size());
  }
  return mask;
}

RatioMask Separator::estimate_masks(const ComplexSpectrogram& mixture, SeparationTimings* timings) const {
  auto start = Clock::now();
  const FeatureMatrix features = extractor_.extract(mixture);
  if (timings) timings->features_s += seconds_since(start);

  RatioMask mask;
  mask.frames = mixture.frames();
  mask.bins = mixture.bins();
  mask.values.assign(mask.frames * mask.bins, 0.0);

  if (cosine_) {
    start = Clock::now();
    parallel_for(features.rows(), params_.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t t = begin; t < end; ++t) {
        const auto m = estimate_mask(knn_search(features.row(t), *cosine_, params_.k), dict_->ibm);
        std::copy(m.begin(), m.end(), mask.values.begin() + static_cast<std::ptrdiff_t>(t * mask.bins));
      }
    });
    if (timings) timings->search_s += seconds_since(start);
    return mask;
  }

  start = Clock::now();
  std::vector<HashCodes> queries;
  queries.reserve(tables_.size());
  for (const auto& table : tables_) queries.push_back(hash_matrix(features, table));
  if (timings) timings->hash_s += seconds_since(start);

  start = Clock::now();
  parallel_for(features.rows(), params_.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      double* out = mask.values.data() + t * mask.bins;
      for (std::size_t i = 0; i < tables_.size(); ++i) {
        const auto part = estimate_mask(knn_search(queries[i].row(t), table_codes_[i], params_.k), dict_->ibm);
        for (std::size_t f = 0; f < mask.bins; ++f) out[f] += part[f];
      }
      if (tables_.size() > 1) {
        for (std::size_t f = 0; f < mask.bins; ++f) out[f] /= static_cast<double>(tables_.size());
      }
    }
  });
  if (timings) timings->search_s += seconds_since(start);
  return mask;
}

SeparationResult Separator::separate(const AudioBuffer& mixture) const {
  if (mixture.sample_rate != dict_->meta.sample_rate) {
    throw InvalidArgument("mixture sample rate " + std::to_string(mixture.sample_rate) +
                          " does not match dictionary sample rate " + std::to_string(dict_->meta.sample_rate));
  }
  SeparationResult result;
  auto start = Clock::now();
  const auto spec = stft(mixture, dict_->meta.frontend.stft);
  result.timings.features_s += seconds_since(start);

  result.mask = estimate_masks(spec, &result.timings);

  start = Clock::now();
  result.audio = istft(apply_mask(result.mask, spec));
  result.audio.samples.resize(mixture.size(), 0.0);
  result.timings.reconstruct_s += seconds_since(start);
  return result;
}

AudioBuffer separate(const AudioBuffer& mixture, const SeparationDictionary& dict, const SeparatorParams& params) {
  return Separator(dict, params).separate(mixture).audio;
}

AudioBuffer oracle_irm_separate(const AudioBuffer& speech, const AudioBuffer& noise, const StftConfig& config) {
  validate(speech);
  validate(noise);
  if (speech.size() != noise.size() || speech.sample_rate != noise.sample_rate) {
    throw InvalidArgument("speech and noise must have equal length and sample rate");
  }
  AudioBuffer mixture{speech.samples, speech.sample_rate};
  for (std::size_t i = 0; i < mixture.size(); ++i) mixture.samples[i] += noise.samples[i];
  const auto spec = stft(mixture, config);
  RatioMask mask{spec.frames(), spec.bins(), compute_irm(stft(speech, config), stft(noise, config))};
  auto out = istft(apply_mask(mask, spec));
  out.samples.resize(mixture.size(), 0.0);
  return out;
}

}  // namespace wtasep
