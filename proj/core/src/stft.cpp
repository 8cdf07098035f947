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

#include "wtasep/stft.hpp"

#include <algorithm>
#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "wtasep/error.hpp"

namespace wtasep {
namespace {

// FFTW's planner is not thread-safe but executing an existing plan on new
// arrays is, so plans are created once per size under a lock.
struct FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~FftPlans() {
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

const FftPlans& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<FftPlans>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<FftPlans>();
    const int size = static_cast<int>(n);
    double* real = fftw_alloc_real(n);
    fftw_complex* spectrum = fftw_alloc_complex(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    slot->forward = fftw_plan_dft_r2c_1d(size, real, spectrum, flags);
    slot->inverse = fftw_plan_dft_c2r_1d(size, spectrum, real, flags);
    fftw_free(real);
    fftw_free(spectrum);
  }
  return *slot;
}

}  // namespace

void validate(const StftConfig& config) {
  if (config.window_len == 0 || config.window_len % 2 != 0) {
    throw InvalidArgument("window length must be positive and even, got " + std::to_string(config.window_len));
  }
  if (config.hop == 0 || config.hop > config.window_len) {
    throw InvalidArgument("hop must satisfy 0 < hop <= window length, got " + std::to_string(config.hop));
  }
}

std::vector<double> analysis_window(const StftConfig& config) {
  std::vector<double> window(config.window_len);
  const double n = static_cast<double>(config.window_len);
  for (std::size_t i = 0; i < window.size(); ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n);
  }
  return window;
}

std::size_t frame_count(std::size_t num_samples, const StftConfig& config) {
  if (num_samples < config.window_len) return 0;
  return 1 + (num_samples - config.window_len) / config.hop;
}

std::size_t signal_length(std::size_t frames, const StftConfig& config) {
  if (frames == 0) return 0;
  return (frames - 1) * config.hop + config.window_len;
}

ComplexSpectrogram::ComplexSpectrogram(std::size_t frames, const StftConfig& config)
    : frames_(frames), bins_(config.bins()), config_(config), data_(frames * config.bins()) {}

std::span<std::complex<double>> ComplexSpectrogram::frame(std::size_t t) {
  return {data_.data() + t * bins_, bins_};
}

std::span<const std::complex<double>> ComplexSpectrogram::frame(std::size_t t) const {
  return {data_.data() + t * bins_, bins_};
}

ComplexSpectrogram stft(const AudioBuffer& audio, const StftConfig& config) {
  validate(config);
  validate(audio);
  if (audio.size() < config.window_len) {
    throw InvalidArgument("insufficient samples: need at least " + std::to_string(config.window_len) +
                          ", got " + std::to_string(audio.size()));
  }

  const std::size_t n = config.window_len;
  const std::size_t frames = frame_count(audio.size(), config);
  const auto window = analysis_window(config);
  const FftPlans& plans = plans_for(n);

  ComplexSpectrogram spec(frames, config);
  spec.set_sample_rate(audio.sample_rate);
  std::vector<double> buffer(n);
  for (std::size_t t = 0; t < frames; ++t) {
    const double* src = audio.samples.data() + t * config.hop;
    for (std::size_t i = 0; i < n; ++i) buffer[i] = src[i] * window[i];
    auto out = spec.frame(t);
    fftw_execute_dft_r2c(plans.forward, buffer.data(), reinterpret_cast<fftw_complex*>(out.data()));
  }
  return spec;
}

AudioBuffer istft(const ComplexSpectrogram& spec) {
  if (spec.frames() == 0) throw InvalidArgument("spectrogram has no frames");
  const StftConfig& config = spec.config();
  validate(config);
  if (spec.bins() != config.bins()) {
    throw InvalidArgument("spectrogram has " + std::to_string(spec.bins()) + " bins, config implies " +
                          std::to_string(config.bins()));
  }

  const std::size_t n = config.window_len;
  const auto window = analysis_window(config);
  const FftPlans& plans = plans_for(n);

  AudioBuffer audio;
  audio.sample_rate = spec.sample_rate();
  audio.samples.assign(signal_length(spec.frames(), config), 0.0);
  std::vector<double> weight(audio.samples.size(), 0.0);

  std::vector<std::complex<double>> bins(spec.bins());
  std::vector<double> frame(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    // c2r overwrites its input.
    const auto src = spec.frame(t);
    std::copy(src.begin(), src.end(), bins.begin());
    fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(bins.data()), frame.data());
    double* dst = audio.samples.data() + t * config.hop;
    double* acc = weight.data() + t * config.hop;
    for (std::size_t i = 0; i < n; ++i) {
      dst[i] += frame[i] * scale * window[i];
      acc[i] += window[i] * window[i];
    }
  }
  const double floor = kWeightFloor * *std::max_element(weight.begin(), weight.end());
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    audio.samples[i] /= std::max(weight[i], floor);
  }
  return audio;
}

}  // namespace wtasep
