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

#include "wtasep/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "wtasep/error.hpp"
#include "wtasep/rng.hpp"

namespace wtasep::synth {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform(Xoshiro256StarStar& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

double gaussian(Xoshiro256StarStar& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u = 1.0 - rng.uniform();
  const double v = rng.uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
}

double resonance(double f, double centre, double bandwidth) {
  const double x = (f - centre) / bandwidth;
  return 1.0 / (1.0 + x * x);
}

void normalize_rms(std::vector<double>& samples, double rms) {
  double sum = 0.0;
  for (double v : samples) sum += v * v;
  if (sum == 0.0) return;
  const double scale = rms / std::sqrt(sum / static_cast<double>(samples.size()));
  for (double& v : samples) v *= scale;
}

struct NoiseType {
  double centre_hz;
  double bandwidth_hz;
  double am_rate_hz;
  double broadband;
};

constexpr std::array<NoiseType, 4> kNoiseTypes = {{
    {2500.0, 1500.0, 2.0, 0.30},
    {800.0, 400.0, 5.0, 0.20},
    {4000.0, 2500.0, 0.7, 0.50},
    {1500.0, 300.0, 9.0, 0.10},
}};

// Average adult F1/F2 pairs of ten English vowels.
struct Vowel {
  double f1, f2;
};

constexpr std::array<Vowel, 10> kVowels = {{
    {270, 2290}, {390, 1990}, {530, 1840}, {660, 1720}, {730, 1090},
    {570, 840}, {440, 1020}, {300, 870}, {640, 1190}, {490, 1350},
}};

// One-pole low-pass applied to the broadband part of every noise type.
constexpr double kNoisePole = 0.9;

}  // namespace

AudioBuffer harmonic_speech(std::uint64_t seed, std::size_t num_samples, int sample_rate) {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  Xoshiro256StarStar rng(seed);
  const double sr = static_cast<double>(sample_rate);
  const double max_harmonic_hz = std::min(5000.0, 0.45 * sr);

  AudioBuffer audio;
  audio.sample_rate = sample_rate;
  audio.samples.assign(num_samples, 0.0);

  const double speaker_f0 = uniform(rng, 90.0, 240.0);
  std::size_t pos = static_cast<std::size_t>(uniform(rng, 0.0, 0.1) * sr);
  while (pos < num_samples) {
    const auto length = static_cast<std::size_t>(uniform(rng, 0.12, 0.35) * sr);
    const double f0_start = speaker_f0 * uniform(rng, 0.85, 1.15);
    const double f0_end = f0_start * uniform(rng, 0.85, 1.15);
    const Vowel& vowel = kVowels[rng.below(kVowels.size())];
    const double f1 = vowel.f1 * uniform(rng, 0.95, 1.05);
    const double f2 = vowel.f2 * uniform(rng, 0.95, 1.05);
    const double loudness = uniform(rng, 0.5, 1.0);
    const std::size_t end = std::min(num_samples, pos + length);
    const auto harmonics = static_cast<std::size_t>(max_harmonic_hz / std::max(f0_start, f0_end));

    std::vector<double> phase(harmonics + 1, 0.0);
    for (double& p : phase) p = uniform(rng, 0.0, kTwoPi);
    for (std::size_t i = pos; i < end; ++i) {
      const double progress = static_cast<double>(i - pos) / static_cast<double>(length);
      const double f0 = f0_start + (f0_end - f0_start) * progress;
      const double envelope = loudness * std::sin(std::numbers::pi * progress);
      double value = 0.0;
      for (std::size_t h = 1; h <= harmonics; ++h) {
        const double f = static_cast<double>(h) * f0;
        // Formant envelope over a -6 dB/octave source.
        const double amp = (resonance(f, f1, 120.0) + 0.6 * resonance(f, f2, 180.0) + 0.01) / static_cast<double>(h);
        phase[h] += kTwoPi * f / sr;
        value += amp * std::sin(phase[h]);
      }
      audio.samples[i] = envelope * value;
    }
    pos = end + static_cast<std::size_t>(uniform(rng, 0.03, 0.15) * sr);
  }
  normalize_rms(audio.samples, 0.1);
  return audio;
}

AudioBuffer modulated_noise(std::uint64_t seed, std::size_t num_samples, int noise_type, int sample_rate) {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  if (noise_type < 0 || static_cast<std::size_t>(noise_type) >= kNoiseTypes.size()) {
    throw InvalidArgument("noise type must be in [0, " + std::to_string(kNoiseTypes.size()) + ")");
  }
  const NoiseType& type = kNoiseTypes[static_cast<std::size_t>(noise_type)];
  Xoshiro256StarStar rng(seed);
  const double sr = static_cast<double>(sample_rate);

  // RBJ band-pass biquad, 0 dB peak gain.
  const double centre = std::min(type.centre_hz, 0.45 * sr);
  const double w0 = kTwoPi * centre / sr;
  const double q = centre / type.bandwidth_hz;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  const double b0 = alpha / a0, b2 = -alpha / a0;
  const double a1 = -2.0 * std::cos(w0) / a0, a2 = (1.0 - alpha) / a0;

  const double am_phase = uniform(rng, 0.0, kTwoPi);
  const double am_rate = type.am_rate_hz * uniform(rng, 0.85, 1.15);

  AudioBuffer audio;
  audio.sample_rate = sample_rate;
  audio.samples.resize(num_samples);
  const double lp_gain = 1.0 / std::sqrt((1.0 - kNoisePole) / (1.0 + kNoisePole));
  double x1 = 0, x2 = 0, y1 = 0, y2 = 0, lp = 0;
  for (std::size_t i = 0; i < num_samples; ++i) {
    const double x = gaussian(rng);
    const double y = b0 * x + b2 * x2 - a1 * y1 - a2 * y2;
    x2 = x1;
    x1 = x;
    y2 = y1;
    y1 = y;
    const double t = static_cast<double>(i) / sr;
    const double am = 1.0 + 0.8 * std::sin(kTwoPi * am_rate * t + am_phase);
    lp = kNoisePole * lp + (1.0 - kNoisePole) * x;
    audio.samples[i] = am * (y + type.broadband * lp_gain * lp);
  }
  normalize_rms(audio.samples, 0.1);
  return audio;
}

FeatureMatrix smooth_spectrogram(std::uint64_t seed, std::size_t frames, std::size_t dim) {
  Xoshiro256StarStar rng(seed);
  struct Bump {
    double base, swing, period, phase, width, height_period;
  };
  std::array<Bump, 3> bumps{};
  const double d = static_cast<double>(dim);
  for (auto& b : bumps) {
    b.base = uniform(rng, 0.15 * d, 0.85 * d);
    b.swing = uniform(rng, 0.05 * d, 0.2 * d);
    b.period = uniform(rng, 40.0, 160.0);
    b.phase = uniform(rng, 0.0, kTwoPi);
    b.width = uniform(rng, 0.03 * d, 0.08 * d);
    b.height_period = uniform(rng, 30.0, 120.0);
  }
  FeatureMatrix out(frames, dim, FeatureKind::kStftMagnitude);
  for (std::size_t t = 0; t < frames; ++t) {
    const double tt = static_cast<double>(t);
    auto row = out.row(t);
    for (std::size_t k = 0; k < dim; ++k) {
      double v = 0.05;
      for (const auto& b : bumps) {
        const double centre = b.base + b.swing * std::sin(kTwoPi * tt / b.period + b.phase);
        const double height = 1.0 + 0.5 * std::sin(kTwoPi * tt / b.height_period + b.phase);
        const double z = (static_cast<double>(k) - centre) / b.width;
        v += height * std::exp(-0.5 * z * z);
      }
      row[k] = static_cast<float>(v);
    }
  }
  return out;
}

}  // namespace wtasep::synth
