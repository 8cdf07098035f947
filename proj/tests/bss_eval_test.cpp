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
#include <random>

#include "oracles/oracles.hpp"
#include "wtasep/bss_eval.hpp"
#include "wtasep/error.hpp"

namespace wtasep {
namespace {

std::vector<double> gaussian(std::mt19937& gen, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

TEST(BssEval, PerfectEstimateIsCapped) {
  std::mt19937 gen(1);
  const auto s = gaussian(gen, 1000);
  const auto n = gaussian(gen, 1000);
  const auto r = bss_eval(s, s, n);
  EXPECT_GE(r.sdr, kScoreCapDb);
  EXPECT_GE(r.sir, kScoreCapDb);
  EXPECT_GE(r.sar, kScoreCapDb);
  EXPECT_TRUE(r.sdr_capped);
  EXPECT_TRUE(r.sir_capped);
  EXPECT_TRUE(r.sar_capped);
}

TEST(BssEval, OrthogonalUnitMixtureHasZeroSirAndSdr) {
  const std::vector<double> s{1.0, 0.0, 0.0, 0.0};
  const std::vector<double> n{0.0, 1.0, 0.0, 0.0};
  const std::vector<double> mix{1.0, 1.0, 0.0, 0.0};
  const auto r = bss_eval(mix, s, n);
  EXPECT_NEAR(r.sir, 0.0, 1e-12);
  EXPECT_NEAR(r.sdr, 0.0, 1e-12);
  EXPECT_TRUE(r.sar_capped);
  EXPECT_FALSE(r.sir_capped);
}

TEST(BssEval, SwappingRolesNegatesSirOnOrthogonalPair) {
  const std::vector<double> s{1.0, 0.0, 0.0, 0.0};
  const std::vector<double> n{0.0, 1.0, 0.0, 0.0};
  const std::vector<double> est{2.0, 0.5, 0.3, 0.0};
  const auto a = bss_eval(est, s, n);
  const auto b = bss_eval(est, n, s);
  EXPECT_NEAR(a.sir, 10.0 * std::log10(16.0), 1e-12);
  EXPECT_NEAR(b.sir, -a.sir, 1e-12);
  EXPECT_NEAR(a.sar, b.sar, 1e-12);
}

TEST(BssEval, MatchesGramOracleOnRandomTriples) {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> mix_weight(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = 200 + 37 * trial;
    const auto s = gaussian(gen, len);
    const auto n = gaussian(gen, len, 0.5);
    const auto extra = gaussian(gen, len, 0.3);
    std::vector<double> est(len);
    const double a = mix_weight(gen), b = mix_weight(gen);
    for (std::size_t i = 0; i < len; ++i) est[i] = s[i] + a * n[i] + b * extra[i];
    const auto got = bss_eval(est, s, n);
    const auto want = oracle::gram_projection_bss(est, s, n);
    EXPECT_NEAR(got.sdr, want.sdr, 1e-6) << trial;
    EXPECT_NEAR(got.sir, want.sir, 1e-6) << trial;
    EXPECT_NEAR(got.sar, want.sar, 1e-6) << trial;
  }
}

TEST(BssEval, ScaleInvariant) {
  std::mt19937 gen(3);
  const auto s = gaussian(gen, 500);
  const auto n = gaussian(gen, 500);
  const auto extra = gaussian(gen, 500);
  std::vector<double> est(500);
  for (std::size_t i = 0; i < 500; ++i) est[i] = s[i] + 0.4 * n[i] + 0.2 * extra[i];
  const auto base = bss_eval(est, s, n);
  for (double alpha : {1e-3, 0.5, 7.0, 1e4}) {
    std::vector<double> scaled(est);
    for (double& v : scaled) v *= alpha;
    const auto r = bss_eval(scaled, s, n);
    EXPECT_NEAR(r.sdr, base.sdr, 1e-9);
    EXPECT_NEAR(r.sir, base.sir, 1e-9);
    EXPECT_NEAR(r.sar, base.sar, 1e-9);
  }
}

TEST(BssEval, RejectsDegenerateInputs) {
  const std::vector<double> s{1.0, 2.0, 3.0};
  const std::vector<double> zero{0.0, 0.0, 0.0};
  const std::vector<double> n{0.5, -1.0, 0.25};
  EXPECT_THROW(bss_eval(s, zero, n), InvalidArgument);
  EXPECT_THROW(bss_eval(s, s, zero), InvalidArgument);
  EXPECT_THROW(bss_eval(s, s, std::vector<double>{2.0, 4.0, 6.0}), InvalidArgument);
  EXPECT_THROW(bss_eval(s, s, std::vector<double>{1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(bss_eval(AudioBuffer{s, 16000}, AudioBuffer{s, 8000}, AudioBuffer{n, 16000}), InvalidArgument);
}

TEST(SdrImprovement, Examples) {
  std::mt19937 gen(4);
  const AudioBuffer s{gaussian(gen, 800), 16000};
  const AudioBuffer n{gaussian(gen, 800), 16000};
  AudioBuffer mix{std::vector<double>(800), 16000};
  for (std::size_t i = 0; i < 800; ++i) mix.samples[i] = s.samples[i] + n.samples[i];
  EXPECT_DOUBLE_EQ(sdr_improvement(mix, mix, s, n), 0.0);
  const double mix_sdr = bss_eval(mix, s, n).sdr;
  EXPECT_NEAR(sdr_improvement(mix, s, s, n), kScoreCapDb - mix_sdr, 1e-9);
  EXPECT_GT(sdr_improvement(mix, s, s, n), 150.0);
}

}  // namespace
}  // namespace wtasep
