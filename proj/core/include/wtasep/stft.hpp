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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wtasep/audio.hpp"

namespace wtasep {

enum class WindowKind { kHann };

/// Analysis parameters. Frames start at sample 0 with no centering or
/// padding, so a signal of n samples yields 1 + (n - window_len) / hop frames.
struct StftConfig {
  std::size_t window_len = 1024;
  std::size_t hop = 512;
  WindowKind window = WindowKind::kHann;

  std::size_t bins() const noexcept { return window_len / 2 + 1; }

  friend bool operator==(const StftConfig&, const StftConfig&) = default;
};

/// Throws InvalidArgument unless 0 < hop <= window_len and window_len is even.
void validate(const StftConfig& config);

/// Periodic Hann window of the configured length.
std::vector<double> analysis_window(const StftConfig& config);

/// Number of frames stft() produces for `num_samples` input samples.
std::size_t frame_count(std::size_t num_samples, const StftConfig& config);

/// Number of samples istft() produces for `frames` frames.
std::size_t signal_length(std::size_t frames, const StftConfig& config);

/// T x F complex half-spectra, row-major (frame-major).
class ComplexSpectrogram {
 public:
  ComplexSpectrogram() = default;
  ComplexSpectrogram(std::size_t frames, const StftConfig& config);

  std::size_t frames() const noexcept { return frames_; }
  std::size_t bins() const noexcept { return bins_; }
  const StftConfig& config() const noexcept { return config_; }
  int sample_rate() const noexcept { return sample_rate_; }
  void set_sample_rate(int sample_rate) noexcept { sample_rate_ = sample_rate; }

  std::span<std::complex<double>> frame(std::size_t t);
  std::span<const std::complex<double>> frame(std::size_t t) const;

  std::complex<double>& at(std::size_t t, std::size_t f) { return data_[t * bins_ + f]; }
  const std::complex<double>& at(std::size_t t, std::size_t f) const {
    return data_[t * bins_ + f];
  }

  std::span<const std::complex<double>> data() const noexcept { return data_; }

 private:
  std::size_t frames_ = 0;
  std::size_t bins_ = 0;
  StftConfig config_;
  int sample_rate_ = 0;
  std::vector<std::complex<double>> data_;
};

/// Windowed DFT of every hop-spaced frame, keeping the F = window_len/2 + 1
/// non-redundant bins. Throws InvalidArgument("insufficient samples") when the
/// input is shorter than one window.
ComplexSpectrogram stft(const AudioBuffer& audio, const StftConfig& config);

/// Weighted overlap-add inverse. Each frame is inverse-transformed, multiplied
/// by the analysis window and accumulated; the sum is divided by the
/// accumulated squared window, floored at kWeightFloor times its peak so the
/// near-zero window tails at both ends fade out instead of amplifying
/// whatever a mask left there. Samples covered by more than the floor are
/// reconstructed exactly.
AudioBuffer istft(const ComplexSpectrogram& spec);

inline constexpr double kWeightFloor = 1e-3;

}  // namespace wtasep
