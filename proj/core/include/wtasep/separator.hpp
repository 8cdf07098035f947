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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wtasep/audio.hpp"
#include "wtasep/dictionary.hpp"
#include "wtasep/knn.hpp"
#include "wtasep/stft.hpp"
#include "wtasep/wta_hash.hpp"

namespace wtasep {

struct SeparatorParams {
  std::size_t k = 5;
  std::size_t subsample = 6;     // M
  std::size_t code_length = 100; // L
  /// Independent permutation tables whose masks are averaged.
  std::size_t tables = 1;
  SimilarityMode mode = SimilarityMode::kHamming;
  /// Seed of table 0; later tables use derive_table_seed(). When unset the
  /// dictionary's stored hash seed is used (0 if it has none).
  std::optional<std::uint64_t> seed;
  /// Overrides the derived per-table seeds; size must equal `tables`.
  std::vector<std::uint64_t> table_seeds;
  /// Worker threads for the per-frame search; results do not depend on it.
  unsigned threads = 1;
};

/// Throws InvalidArgument on K == 0, tables == 0, M < 2, L == 0 or a
/// table_seeds size mismatch.
void validate(const SeparatorParams& params);

/// Per-frame soft mask, T x F row-major, entries in [0, 1].
struct RatioMask {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<double> values;

  std::span<const double> frame(std::size_t t) const { return {values.data() + t * bins, bins}; }
};

/// Multiplies every frame of `spec` by the matching mask row.
ComplexSpectrogram apply_mask(const RatioMask& mask, const ComplexSpectrogram& spec);

struct SeparationTimings {
  double features_s = 0.0;
  double hash_s = 0.0;
  double search_s = 0.0;
  double reconstruct_s = 0.0;
};

struct SeparationResult {
  AudioBuffer audio;
  RatioMask mask;
  SeparationTimings timings;
};

/// KNN mask estimator bound to one dictionary. Construction hashes the
/// dictionary features for every table whose codes are not already stored.
/// The dictionary must outlive the separator.
class Separator {
 public:
  Separator(const SeparationDictionary& dict, const SeparatorParams& params);

  const SeparatorParams& params() const noexcept { return params_; }
  std::span<const PermutationTable> tables() const noexcept { return tables_; }

  /// Mask of one feature row (D) of a mixture frame.
  std::vector<double> estimate_frame_mask(std::span<const float> features) const;

  RatioMask estimate_masks(const ComplexSpectrogram& mixture,
                           SeparationTimings* timings = nullptr) const;

  SeparationResult separate(const AudioBuffer& mixture) const;

 private:
  const SeparationDictionary* dict_;
  SeparatorParams params_;
  FeatureExtractor extractor_;
  std::optional<CosineIndex> cosine_;
  std::vector<PermutationTable> tables_;
  std::vector<HashCodes> table_codes_;
};

AudioBuffer separate(const AudioBuffer& mixture, const SeparationDictionary& dict,
                     const SeparatorParams& params);

/// Upper bound: masks speech + noise with the ideal ratio mask computed from
/// the clean sources. Output has the mixture's length.
AudioBuffer oracle_irm_separate(const AudioBuffer& speech, const AudioBuffer& noise,
                                const StftConfig& config);

}  // namespace wtasep
