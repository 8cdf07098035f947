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

#include <cstdint>
#include <optional>
#include <vector>

#include "wtasep/audio.hpp"
#include "wtasep/binary_matrix.hpp"
#include "wtasep/features.hpp"
#include "wtasep/stft.hpp"
#include "wtasep/wta_hash.hpp"

namespace wtasep {

/// One clean-speech / noise training pair and its target mixing SNR.
struct MixSpec {
  AudioBuffer speech;
  AudioBuffer noise;
  double snr_db = 0.0;
};

struct MixResult {
  AudioBuffer mixture;
  AudioBuffer scaled_noise;
  double gain = 1.0;
};

/// Scales the noise by g = |s| 10^(-snr/20) / |n| and adds it to the speech.
/// Noise longer than the speech is cut to the speech length (its first
/// samples are kept); shorter noise, mismatched sample rates and zero-energy
/// inputs raise InvalidArgument.
MixResult mix_at_snr(const MixSpec& spec);

/// 1 where |speech| > |noise| (strict), else 0.
BinaryMatrix compute_ibm(const ComplexSpectrogram& speech, const ComplexSpectrogram& noise);

/// |s| / (|s| + |n|), with 0/0 = 0. Row-major T x F.
std::vector<double> compute_irm(const ComplexSpectrogram& speech, const ComplexSpectrogram& noise);

/// Parameters of the permutation table a dictionary's codes were hashed with.
/// The table itself is regenerated from the seed.
struct HashParams {
  std::size_t code_length = 100;  // L
  std::size_t subsample = 6;      // M
  std::uint64_t seed = 0;

  friend bool operator==(const HashParams&, const HashParams&) = default;
};

struct DictionaryMeta {
  int sample_rate = 0;
  FrontendConfig frontend;
  std::optional<HashParams> hash;

  friend bool operator==(const DictionaryMeta&, const DictionaryMeta&) = default;
};

/// Mixture features H (T x D), ideal binary masks Y (T x F) and, optionally,
/// packed WTA codes of H. Row t of all three comes from the same frame.
struct SeparationDictionary {
  DictionaryMeta meta;
  FeatureMatrix features;
  BinaryMatrix ibm;
  std::optional<HashCodes> codes;

  std::size_t frames() const noexcept { return features.rows(); }

  /// Table matching meta.hash. Throws InvalidArgument when no codes exist.
  PermutationTable permutation_table() const;

  friend bool operator==(const SeparationDictionary&, const SeparationDictionary&) = default;
};

/// Throws InvalidArgument when row counts, F, D or code parameters disagree.
void validate(const SeparationDictionary& dict);

/// Mixes each pair, takes the STFT of mixture / speech / scaled noise, and
/// appends mixture features and the speech-vs-noise IBM. Rows keep input order.
SeparationDictionary build_dictionary(const std::vector<MixSpec>& pairs,
                                      const FrontendConfig& frontend);

/// Hashes the dictionary features and records the parameters in meta.
void attach_codes(SeparationDictionary& dict, const HashParams& params);

}  // namespace wtasep
