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
#include <span>
#include <string_view>
#include <vector>

#include "wtasep/stft.hpp"

namespace wtasep {

enum class FeatureKind : std::uint8_t { kStftMagnitude = 0, kMel = 1 };

std::string_view to_string(FeatureKind kind) noexcept;
/// Accepts "stft" / "stft-magnitude" and "mel".
FeatureKind parse_feature_kind(std::string_view text);

/// T x D nonnegative features stored as 32-bit floats, row-major.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t dim, FeatureKind kind);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }
  FeatureKind kind() const noexcept { return kind_; }

  std::span<float> row(std::size_t t) { return {data_.data() + t * dim_, dim_}; }
  std::span<const float> row(std::size_t t) const { return {data_.data() + t * dim_, dim_}; }

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }

  /// Appends the rows of `other`; kinds and dimensions must agree.
  void append(const FeatureMatrix& other);

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  FeatureKind kind_ = FeatureKind::kStftMagnitude;
  std::vector<float> data_;
};

/// Element-wise modulus; kind = stft-magnitude, D = F.
FeatureMatrix magnitude(const ComplexSpectrogram& spec);

struct MelConfig {
  std::size_t bands = 40;
  double f_min = 0.0;
  /// Upper edge in Hz; a value <= 0 means sample_rate / 2.
  double f_max = 0.0;

  friend bool operator==(const MelConfig&, const MelConfig&) = default;
};

double hz_to_mel(double hz) noexcept;
double mel_to_hz(double mel) noexcept;

/// D_mel x F triangular filters on the HTK mel scale, peak weight 1.
class MelFilterbank {
 public:
  /// Custom weights; every row must be nonnegative with a positive entry.
  MelFilterbank(std::size_t bands, std::size_t bins, std::vector<double> weights);

  /// HTK triangles with edges evenly spaced in mel between f_min and f_max.
  /// Throws InvalidArgument when a band would cover no FFT bin.
  static MelFilterbank htk(const MelConfig& config, int sample_rate, std::size_t window_len);

  std::size_t bands() const noexcept { return bands_; }
  std::size_t bins() const noexcept { return bins_; }
  double weight(std::size_t band, std::size_t bin) const { return weights_[band * bins_ + bin]; }
  std::span<const double> band(std::size_t b) const { return {weights_.data() + b * bins_, bins_}; }

 private:
  std::size_t bands_;
  std::size_t bins_;
  std::vector<double> weights_;
};

/// mel = mag * fb^T. Requires an stft-magnitude input with D equal to fb.bins().
FeatureMatrix to_mel(const FeatureMatrix& mag, const MelFilterbank& fb);

/// Everything needed to turn audio into search features.
struct FrontendConfig {
  StftConfig stft;
  FeatureKind kind = FeatureKind::kMel;
  MelConfig mel;

  friend bool operator==(const FrontendConfig&, const FrontendConfig&) = default;
};

/// Spectrogram -> features for one sample rate. Holds the mel filterbank when
/// kind is mel.
class FeatureExtractor {
 public:
  FeatureExtractor(const FrontendConfig& config, int sample_rate);

  const FrontendConfig& config() const noexcept { return config_; }
  int sample_rate() const noexcept { return sample_rate_; }
  /// Output dimensionality D.
  std::size_t dim() const noexcept;

  FeatureMatrix extract(const ComplexSpectrogram& spec) const;

 private:
  FrontendConfig config_;
  int sample_rate_;
  std::vector<MelFilterbank> filterbank_;  // empty for stft-magnitude
};

}  // namespace wtasep
