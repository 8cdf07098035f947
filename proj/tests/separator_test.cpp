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

#include <gtest/gtest.h>

#include <cmath>

#include "wtasep/error.hpp"
#include "wtasep/instrumentation.hpp"
#include "wtasep/rng.hpp"
#include "wtasep/separator.hpp"
#include "wtasep/synth.hpp"

namespace wtasep {
namespace {

SeparationDictionary small_dictionary(FeatureKind kind = FeatureKind::kMel, std::size_t pairs = 3) {
  std::vector<MixSpec> specs;
  for (std::size_t i = 0; i < pairs; ++i) {
    specs.push_back({synth::harmonic_speech(100 + i, 16000), synth::modulated_noise(200 + i, 16000), 0.0});
  }
  FrontendConfig frontend;
  frontend.kind = kind;
  auto dict = build_dictionary(specs, frontend);
  attach_codes(dict, HashParams{100, 6, 5});
  return dict;
}

// Dictionary built from the mixture's own frames with every IBM bit set.
SeparationDictionary self_dictionary(const AudioBuffer& mixture) {
  SeparationDictionary dict;
  dict.meta.sample_rate = mixture.sample_rate;
  const FeatureExtractor extractor(dict.meta.frontend, mixture.sample_rate);
  const auto spec = stft(mixture, dict.meta.frontend.stft);
  dict.features = extractor.extract(spec);
  dict.ibm = BinaryMatrix(spec.frames(), spec.bins());
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    for (std::size_t f = 0; f < spec.bins(); ++f) dict.ibm.set(t, f, true);
  }
  return dict;
}

TEST(Separator, AllOnesSelfDictionaryReproducesResynthesis) {
  const auto mixed = mix_at_snr({synth::harmonic_speech(1, 20000), synth::modulated_noise(2, 20000), 0.0});
  const auto dict = self_dictionary(mixed.mixture);
  auto expected = istft(stft(mixed.mixture, StftConfig{}));
  expected.samples.resize(mixed.mixture.size(), 0.0);

  for (auto mode : {SimilarityMode::kCosine, SimilarityMode::kHamming}) {
    SeparatorParams params;
    params.k = 1;
    params.mode = mode;
    const auto out = separate(mixed.mixture, dict, params);
    ASSERT_EQ(out.size(), expected.size());
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out.samples[i], expected.samples[i], 1e-12);
  }
}

TEST(Separator, TwoIdenticalTablesCollapseToOne) {
  const auto dict = small_dictionary();
  const auto mixed = mix_at_snr({synth::harmonic_speech(9, 24000), synth::modulated_noise(10, 24000), 0.0});
  SeparatorParams one;
  one.seed = 123;
  SeparatorParams two = one;
  two.tables = 2;
  two.table_seeds = {123, 123};
  const auto a = Separator(dict, one).separate(mixed.mixture);
  const auto b = Separator(dict, two).separate(mixed.mixture);
  EXPECT_EQ(a.mask.values, b.mask.values);
  EXPECT_EQ(a.audio.samples, b.audio.samples);
}

TEST(Separator, MultipleTablesAverageMasks) {
  const auto dict = small_dictionary();
  const auto mixed = mix_at_snr({synth::harmonic_speech(9, 24000), synth::modulated_noise(10, 24000), 0.0});
  SeparatorParams params;
  params.seed = 7;
  params.tables = 3;
  const Separator sep(dict, params);
  ASSERT_EQ(sep.tables().size(), 3U);
  const auto spec = stft(mixed.mixture, dict.meta.frontend.stft);
  const auto mask = sep.estimate_masks(spec);

  std::vector<double> manual(mask.values.size(), 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    SeparatorParams single;
    single.table_seeds = {derive_table_seed(7, i)};
    const auto part = Separator(dict, single).estimate_masks(spec);
    for (std::size_t j = 0; j < manual.size(); ++j) manual[j] += part.values[j];
  }
  for (std::size_t j = 0; j < manual.size(); ++j) EXPECT_DOUBLE_EQ(mask.values[j], manual[j] / 3.0);
}

TEST(Separator, CosineModeNeverHashes) {
  const auto dict = small_dictionary();
  const auto mixed = mix_at_snr({synth::harmonic_speech(3, 20000), synth::modulated_noise(4, 20000), 0.0});
  SeparatorParams params;
  params.mode = SimilarityMode::kCosine;
  instrumentation::reset_hash_calls();
  const auto out = Separator(dict, params).separate(mixed.mixture);
  EXPECT_EQ(instrumentation::hash_calls(), 0U);

  params.mode = SimilarityMode::kHamming;
  Separator(dict, params).separate(mixed.mixture);
  EXPECT_GT(instrumentation::hash_calls(), 0U);
}

TEST(Separator, ThreadCountDoesNotChangeResults) {
  const auto dict = small_dictionary();
  const auto mixed = mix_at_snr({synth::harmonic_speech(5, 30000), synth::modulated_noise(6, 30000), 0.0});
  for (auto mode : {SimilarityMode::kCosine, SimilarityMode::kHamming}) {
    SeparatorParams params;
    params.mode = mode;
    params.tables = 2;
    const auto serial = Separator(dict, params).separate(mixed.mixture);
    params.threads = 4;
    const auto parallel = Separator(dict, params).separate(mixed.mixture);
    EXPECT_EQ(serial.mask.values, parallel.mask.values);
    EXPECT_EQ(serial.audio.samples, parallel.audio.samples);
  }
}

TEST(Separator, StoredCodesAndFreshHashingAgree) {
  const auto with_codes = small_dictionary();
  auto without_codes = with_codes;
  without_codes.codes.reset();
  without_codes.meta.hash.reset();
  const auto mixed = mix_at_snr({synth::harmonic_speech(7, 20000), synth::modulated_noise(8, 20000), 0.0});
  SeparatorParams params;
  params.seed = 5;
  EXPECT_EQ(Separator(with_codes, params).separate(mixed.mixture).audio.samples,
            Separator(without_codes, params).separate(mixed.mixture).audio.samples);
}

TEST(Separator, MaskEntriesLieOnTheNeighborGrid) {
  const auto dict = small_dictionary();
  const auto mixed = mix_at_snr({synth::harmonic_speech(11, 20000), synth::modulated_noise(12, 20000), 0.0});
  SeparatorParams params;
  params.k = 4;
  const auto result = Separator(dict, params).separate(mixed.mixture);
  for (double v : result.mask.values) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_DOUBLE_EQ(v * 4.0, std::round(v * 4.0));
  }
}

TEST(Separator, RejectsBadInputs) {
  const auto dict = small_dictionary();
  auto mixture = synth::harmonic_speech(1, 20000, 8000);
  EXPECT_THROW(separate(mixture, dict, SeparatorParams{}), InvalidArgument);

  SeparatorParams params;
  params.k = dict.frames() + 1;
  EXPECT_THROW(Separator(dict, params), InvalidArgument);
  params = SeparatorParams{};
  params.tables = 0;
  EXPECT_THROW(Separator(dict, params), InvalidArgument);
  params = SeparatorParams{};
  params.tables = 2;
  params.table_seeds = {1};
  EXPECT_THROW(Separator(dict, params), InvalidArgument);
  params = SeparatorParams{};
  params.subsample = 41;
  EXPECT_THROW(Separator(dict, params), InvalidArgument);
}

TEST(Separator, DefaultsFollowBestReportedCombination) {
  const SeparatorParams params;
  EXPECT_EQ(params.k, 5U);
  EXPECT_EQ(params.subsample, 6U);
  EXPECT_EQ(params.code_length, 100U);
  EXPECT_EQ(params.tables, 1U);
}

}  // namespace
}  // namespace wtasep
