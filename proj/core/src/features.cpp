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

#include "wtasep/features.hpp"

#include <cmath>
#include <string>

#include "wtasep/error.hpp"

namespace wtasep {

std::string_view to_string(FeatureKind kind) noexcept {
  return kind == FeatureKind::kMel ? "mel" : "stft-magnitude";
}

FeatureKind parse_feature_kind(std::string_view text) {
  if (text == "mel") return FeatureKind::kMel;
  if (text == "stft" || text == "stft-magnitude") return FeatureKind::kStftMagnitude;
  throw InvalidArgument("unknown feature kind '" + std::string(text) + "' (expected mel or stft)");
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t dim, FeatureKind kind)
    : rows_(rows), dim_(dim), kind_(kind), data_(rows * dim, 0.0F) {}

void FeatureMatrix::append(const FeatureMatrix& other) {
  if (rows_ == 0 && dim_ == 0) {
    *this = other;
    return;
  }
  if (other.dim_ != dim_ || other.kind_ != kind_) {
    throw InvalidArgument("cannot append feature rows of a different kind or dimension");
  }
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

FeatureMatrix magnitude(const ComplexSpectrogram& spec) {
  FeatureMatrix out(spec.frames(), spec.bins(), FeatureKind::kStftMagnitude);
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    const auto in = spec.frame(t);
    auto row = out.row(t);
    for (std::size_t f = 0; f < in.size(); ++f) row[f] = static_cast<float>(std::abs(in[f]));
  }
  return out;
}

double hz_to_mel(double hz) noexcept { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) noexcept { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank(std::size_t bands, std::size_t bins, std::vector<double> weights)
    : bands_(bands), bins_(bins), weights_(std::move(weights)) {
  if (bands_ == 0 || bins_ == 0 || weights_.size() != bands_ * bins_) {
    throw InvalidArgument("filterbank weights must be a nonempty bands x bins matrix");
  }
  for (std::size_t b = 0; b < bands_; ++b) {
    bool positive = false;
    for (double w : band(b)) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("filterbank weights must be finite and nonnegative");
      positive = positive || w > 0.0;
    }
    if (!positive) throw InvalidArgument("mel band " + std::to_string(b) + " has no positive weight");
  }
}

MelFilterbank MelFilterbank::htk(const MelConfig& config, int sample_rate, std::size_t window_len) {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  if (config.bands == 0) throw InvalidArgument("mel band count must be positive");
  const double nyquist = sample_rate / 2.0;
  const double f_max = config.f_max > 0.0 ? config.f_max : nyquist;
  if (config.f_min < 0.0 || f_max <= config.f_min || f_max > nyquist) {
    throw InvalidArgument("mel range must satisfy 0 <= f_min < f_max <= sample_rate/2");
  }

  const std::size_t bins = window_len / 2 + 1;
  const double mel_lo = hz_to_mel(config.f_min);
  const double mel_hi = hz_to_mel(f_max);
  std::vector<double> edges(config.bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / static_cast<double>(config.bands + 1));
  }

  std::vector<double> weights(config.bands * bins, 0.0);
  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(window_len);
  for (std::size_t b = 0; b < config.bands; ++b) {
    const double lo = edges[b], centre = edges[b + 1], hi = edges[b + 2];
    bool covered = false;
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * bin_hz;
      double w = 0.0;
      if (f > lo && f <= centre) {
        w = (f - lo) / (centre - lo);
      } else if (f > centre && f < hi) {
        w = (hi - f) / (hi - centre);
      }
      weights[b * bins + k] = w;
      covered = covered || w > 0.0;
    }
    if (!covered) {
      throw InvalidArgument("mel band " + std::to_string(b) + " covers no FFT bin; use fewer bands or a longer window");
    }
  }
  return MelFilterbank(config.bands, bins, std::move(weights));
}

FeatureMatrix to_mel(const FeatureMatrix& mag, const MelFilterbank& fb) {
  if (mag.kind() != FeatureKind::kStftMagnitude) throw InvalidArgument("to_mel expects stft-magnitude features");
  if (mag.dim() != fb.bins()) {
    throw InvalidArgument("filterbank expects " + std::to_string(fb.bins()) + " bins, features have " +
                          std::to_string(mag.dim()));
  }
  FeatureMatrix out(mag.rows(), fb.bands(), FeatureKind::kMel);
  for (std::size_t t = 0; t < mag.rows(); ++t) {
    const auto in = mag.row(t);
    auto row = out.row(t);
    for (std::size_t b = 0; b < fb.bands(); ++b) {
      const auto weights = fb.band(b);
      double sum = 0.0;
      for (std::size_t k = 0; k < in.size(); ++k) sum += weights[k] * in[k];
      row[b] = static_cast<float>(sum);
    }
  }
  return out;
}

FeatureExtractor::FeatureExtractor(const FrontendConfig& config, int sample_rate)
    : config_(config), sample_rate_(sample_rate) {
  validate(config_.stft);
  if (config_.kind == FeatureKind::kMel) {
    filterbank_.push_back(MelFilterbank::htk(config_.mel, sample_rate_, config_.stft.window_len));
  }
}

std::size_t FeatureExtractor::dim() const noexcept {
  return filterbank_.empty() ? config_.stft.bins() : filterbank_.front().bands();
}

FeatureMatrix FeatureExtractor::extract(const ComplexSpectrogram& spec) const {
  if (spec.config() != config_.stft) throw InvalidArgument("spectrogram was computed with a different STFT config");
  auto mag = magnitude(spec);
  if (filterbank_.empty()) return mag;
  return to_mel(mag, filterbank_.front());
}

}  // namespace wtasep
