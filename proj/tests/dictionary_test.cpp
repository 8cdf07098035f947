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
#include <numbers>
#include <random>

#include "wtasep/dictionary.hpp"
#include "wtasep/error.hpp"
#include "wtasep/synth.hpp"

namespace wtasep {
namespace {

AudioBuffer random_audio(std::size_t n, std::uint32_t seed, double scale = 1.0) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, scale);
  AudioBuffer a{std::vector<double>(n), 16000};
  for (double& v : a.samples) v = dist(gen);
  return a;
}

double measured_snr(const MixResult& r, const AudioBuffer& speech) {
  return 10.0 * std::log10(energy(speech.view()) / energy(r.scaled_noise.view()));
}

TEST(MixAtSnr, EqualEnergiesAtZeroDbKeepUnitGain) {
  const AudioBuffer s{{1.0, -1.0, 1.0, -1.0}, 16000};
  const AudioBuffer n{{1.0, 1.0, -1.0, -1.0}, 16000};
  const auto r = mix_at_snr({s, n, 0.0});
  EXPECT_DOUBLE_EQ(r.gain, 1.0);
  EXPECT_EQ(r.mixture.samples, (std::vector<double>{2.0, 0.0, 0.0, -2.0}));
}

TEST(MixAtSnr, TwentyDbScalesNoiseEnergyByOneHundredth) {
  const auto s = random_audio(5000, 1);
  const auto n = random_audio(5000, 2, 3.0);
  const auto r = mix_at_snr({s, n, 20.0});
  EXPECT_NEAR(energy(r.scaled_noise.view()), energy(s.view()) / 100.0, 1e-9 * energy(s.view()));
  EXPECT_NEAR(r.gain, std::sqrt(energy(s.view())) / (10.0 * std::sqrt(energy(n.view()))), 1e-12);
}

TEST(MixAtSnr, HitsRequestedSnrAndTruncatesLongNoise) {
  for (double snr : {-10.0, -3.0, 0.0, 7.5, 10.0}) {
    const auto s = random_audio(8000, 3);
    const auto n = random_audio(12000, 4, 0.2);
    const auto r = mix_at_snr({s, n, snr});
    ASSERT_EQ(r.mixture.size(), s.size());
    EXPECT_NEAR(measured_snr(r, s), snr, 1e-9);
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_DOUBLE_EQ(r.mixture.samples[i], s.samples[i] + r.gain * n.samples[i]);
    }
  }
}

TEST(MixAtSnr, RejectsShortNoiseSilenceAndRateMismatch) {
  const auto s = random_audio(100, 5);
  EXPECT_THROW(mix_at_snr({s, random_audio(99, 6), 0.0}), InvalidArgument);
  EXPECT_THROW(mix_at_snr({s, AudioBuffer{std::vector<double>(100, 0.0), 16000}, 0.0}), InvalidArgument);
  EXPECT_THROW(mix_at_snr({AudioBuffer{std::vector<double>(100, 0.0), 16000}, random_audio(100, 6), 0.0}),
               InvalidArgument);
  auto other_rate = random_audio(100, 7);
  other_rate.sample_rate = 8000;
  EXPECT_THROW(mix_at_snr({s, other_rate, 0.0}), InvalidArgument);
}

ComplexSpectrogram random_spec(std::mt19937& gen, std::size_t frames, std::size_t window) {
  std::normal_distribution<double> dist;
  ComplexSpectrogram spec(frames, StftConfig{window, window / 2});
  for (std::size_t t = 0; t < frames; ++t) {
    for (auto& c : spec.frame(t)) c = {dist(gen), dist(gen)};
  }
  return spec;
}

TEST(Masks, IbmAndIrmExamples) {
  std::mt19937 gen(8);
  const auto speech = random_spec(gen, 3, 16);
  const ComplexSpectrogram silent(3, StftConfig{16, 8});
  const auto ibm = compute_ibm(speech, silent);
  const auto irm = compute_irm(speech, silent);
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t f = 0; f < 9; ++f) {
      EXPECT_TRUE(ibm.get(t, f));
      EXPECT_EQ(irm[t * 9 + f], 1.0);
    }
  }
  const auto same_ibm = compute_ibm(speech, speech);
  const auto same_irm = compute_irm(speech, speech);
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t f = 0; f < 9; ++f) {
      EXPECT_FALSE(same_ibm.get(t, f));
      EXPECT_DOUBLE_EQ(same_irm[t * 9 + f], 0.5);
    }
  }
  const auto zero_irm = compute_irm(silent, silent);
  for (double v : zero_irm) EXPECT_EQ(v, 0.0);
}

TEST(Masks, MatchElementwiseOracleAndAgreeWithEachOther) {
  std::mt19937 gen(9);
  const auto s = random_spec(gen, 20, 64);
  const auto n = random_spec(gen, 20, 64);
  const auto ibm = compute_ibm(s, n);
  const auto irm = compute_irm(s, n);
  for (std::size_t t = 0; t < s.frames(); ++t) {
    for (std::size_t f = 0; f < s.bins(); ++f) {
      const double as = std::hypot(s.at(t, f).real(), s.at(t, f).imag());
      const double an = std::hypot(n.at(t, f).real(), n.at(t, f).imag());
      EXPECT_EQ(ibm.get(t, f), as > an);
      EXPECT_NEAR(irm[t * s.bins() + f], as / (as + an), 1e-12);
      EXPECT_EQ(ibm.get(t, f), irm[t * s.bins() + f] > 0.5);
    }
  }
  EXPECT_THROW(compute_ibm(s, random_spec(gen, 19, 64)), InvalidArgument);
  EXPECT_THROW(compute_irm(s, random_spec(gen, 20, 32)), InvalidArgument);
}

TEST(BuildDictionary, RowCountsFollowFrameFormula) {
  std::vector<MixSpec> pairs;
  std::size_t expected = 0;
  const StftConfig stft_config;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const std::size_t len = 8000 + 1337 * i;
    pairs.push_back({synth::harmonic_speech(i, len), synth::modulated_noise(50 + i, len + 100), 0.0});
    expected += 1 + (len - stft_config.window_len) / stft_config.hop;
  }
  const auto dict = build_dictionary(pairs, FrontendConfig{});
  EXPECT_EQ(dict.frames(), expected);
  EXPECT_EQ(dict.ibm.rows(), expected);
  EXPECT_EQ(dict.features.dim(), 40U);
  EXPECT_EQ(dict.ibm.cols(), 513U);
  EXPECT_NO_THROW(validate(dict));
}

TEST(BuildDictionary, SinglePairAndDuplicatedPairs) {
  const MixSpec pair{synth::harmonic_speech(1, 12000), synth::modulated_noise(2, 12000), 0.0};
  const auto one = build_dictionary({pair}, FrontendConfig{});
  const std::size_t t0 = frame_count(12000, StftConfig{});
  EXPECT_EQ(one.frames(), t0);
  EXPECT_EQ(one.features.rows(), one.ibm.rows());

  const auto two = build_dictionary({pair, pair}, FrontendConfig{});
  ASSERT_EQ(two.frames(), 2 * t0);
  for (std::size_t t = 0; t < t0; ++t) {
    EXPECT_TRUE(std::equal(two.features.row(t).begin(), two.features.row(t).end(), two.features.row(t + t0).begin()));
    for (std::size_t f = 0; f < two.ibm.cols(); ++f) EXPECT_EQ(two.ibm.get(t, f), two.ibm.get(t + t0, f));
  }
  EXPECT_THROW(build_dictionary({}, FrontendConfig{}), InvalidArgument);
}

TEST(BuildDictionary, RowsStayAlignedAcrossFeaturesMasksAndCodes) {
  // Each pair is a pure tone at its own bin over faint noise; every row of
  // every matrix must point back at the same tone.
  std::vector<MixSpec> pairs;
  std::vector<std::size_t> tone_bin;
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t bin = 20 + 15 * i;
    const std::size_t len = 4096 + 512 * i;
    AudioBuffer tone{std::vector<double>(len), 16000};
    for (std::size_t n = 0; n < len; ++n) tone.samples[n] = std::sin(2.0 * std::numbers::pi * bin * n / 1024.0);
    pairs.push_back({tone, random_audio(len, 100 + i), 20.0});
    for (std::size_t t = 0; t < frame_count(len, StftConfig{}); ++t) tone_bin.push_back(bin);
  }
  FrontendConfig frontend;
  frontend.kind = FeatureKind::kStftMagnitude;
  auto dict = build_dictionary(pairs, frontend);
  attach_codes(dict, HashParams{64, 4, 3});
  ASSERT_EQ(dict.frames(), tone_bin.size());
  const auto table = dict.permutation_table();
  for (std::size_t t = 0; t < dict.frames(); ++t) {
    const auto row = dict.features.row(t);
    EXPECT_EQ(static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin()), tone_bin[t]);
    EXPECT_TRUE(dict.ibm.get(t, tone_bin[t]));
    EXPECT_EQ(dict.codes->codes(t), hash_vector(row, table));
  }
}

TEST(AttachCodes, RecordsParametersAndValidates) {
  auto dict = build_dictionary({{synth::harmonic_speech(1, 9000), synth::modulated_noise(2, 9000), 0.0}},
                               FrontendConfig{});
  EXPECT_THROW(dict.permutation_table(), InvalidArgument);
  attach_codes(dict, HashParams{100, 6, 42});
  ASSERT_TRUE(dict.codes.has_value());
  EXPECT_EQ(dict.codes->rows(), dict.frames());
  EXPECT_EQ(dict.meta.hash, (HashParams{100, 6, 42}));
  EXPECT_NO_THROW(validate(dict));
  dict.meta.hash->subsample = 4;
  EXPECT_THROW(validate(dict), InvalidArgument);
}

}  // namespace
}  // namespace wtasep
