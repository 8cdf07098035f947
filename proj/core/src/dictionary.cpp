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

#include "wtasep/dictionary.hpp"

#include <cmath>
#include <string>

#include "wtasep/error.hpp"

namespace wtasep {
namespace {

void check_same_shape(const ComplexSpectrogram& a, const ComplexSpectrogram& b) {
  if (a.frames() != b.frames() || a.bins() != b.bins()) {
    throw InvalidArgument("spectrogram shapes differ: " + std::to_string(a.frames()) + "x" + std::to_string(a.bins()) +
                          " vs " + std::to_string(b.frames()) + "x" + std::to_string(b.bins()));
  }
}

}  // namespace

MixResult mix_at_snr(const MixSpec& spec) {
  validate(spec.speech);
  validate(spec.noise);
  if (spec.speech.sample_rate != spec.noise.sample_rate) {
    throw InvalidArgument("speech and noise sample rates differ (" + std::to_string(spec.speech.sample_rate) +
                          " vs " + std::to_string(spec.noise.sample_rate) + ")");
  }
  if (spec.noise.size() < spec.speech.size()) {
    throw InvalidArgument("noise is shorter than speech (" + std::to_string(spec.noise.size()) + " < " +
                          std::to_string(spec.speech.size()) + " samples)");
  }
  if (!std::isfinite(spec.snr_db)) throw InvalidArgument("target SNR must be finite");

  const std::size_t n = spec.speech.size();
  const double speech_energy = energy(spec.speech.view());
  const double noise_energy = energy(spec.noise.view().first(n));
  if (speech_energy == 0.0) throw InvalidArgument("speech has zero energy");
  if (noise_energy == 0.0) throw InvalidArgument("noise has zero energy over the speech span");

  MixResult out;
  out.gain = std::sqrt(speech_energy / noise_energy) * std::pow(10.0, -spec.snr_db / 20.0);
  out.scaled_noise.sample_rate = spec.speech.sample_rate;
  out.mixture.sample_rate = spec.speech.sample_rate;
  out.scaled_noise.samples.resize(n);
  out.mixture.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.scaled_noise.samples[i] = out.gain * spec.noise.samples[i];
    out.mixture.samples[i] = spec.speech.samples[i] + out.scaled_noise.samples[i];
  }
  return out;
}

BinaryMatrix compute_ibm(const ComplexSpectrogram& speech, const ComplexSpectrogram& noise) {
  check_same_shape(speech, noise);
  BinaryMatrix ibm(speech.frames(), speech.bins());
  for (std::size_t t = 0; t < speech.frames(); ++t) {
    for (std::size_t f = 0; f < speech.bins(); ++f) {
      if (std::abs(speech.at(t, f)) > std::abs(noise.at(t, f))) ibm.set(t, f, true);
    }
  }
  return ibm;
}

std::vector<double> compute_irm(const ComplexSpectrogram& speech, const ComplexSpectrogram& noise) {
  check_same_shape(speech, noise);
  std::vector<double> irm(speech.frames() * speech.bins());
  for (std::size_t t = 0; t < speech.frames(); ++t) {
    for (std::size_t f = 0; f < speech.bins(); ++f) {
      const double s = std::abs(speech.at(t, f));
      const double n = std::abs(noise.at(t, f));
      irm[t * speech.bins() + f] = (s + n) > 0.0 ? s / (s + n) : 0.0;
    }
  }
  return irm;
}

PermutationTable SeparationDictionary::permutation_table() const {
  if (!meta.hash) throw InvalidArgument("dictionary has no hash codes");
  return generate_permutations(meta.hash->seed, meta.hash->code_length, meta.hash->subsample, features.dim());
}

void validate(const SeparationDictionary& dict) {
  if (dict.meta.sample_rate <= 0) throw InvalidArgument("dictionary sample rate must be positive");
  validate(dict.meta.frontend.stft);
  if (dict.features.rows() != dict.ibm.rows()) {
    throw InvalidArgument("feature rows (" + std::to_string(dict.features.rows()) + ") and IBM rows (" +
                          std::to_string(dict.ibm.rows()) + ") differ");
  }
  if (dict.ibm.cols() != dict.meta.frontend.stft.bins()) {
    throw InvalidArgument("IBM width does not match the STFT bin count");
  }
  if (dict.features.kind() != dict.meta.frontend.kind) throw InvalidArgument("feature kind does not match metadata");
  const std::size_t expected_dim = dict.meta.frontend.kind == FeatureKind::kMel ? dict.meta.frontend.mel.bands
                                                                                 : dict.meta.frontend.stft.bins();
  if (dict.features.dim() != expected_dim) throw InvalidArgument("feature dimension does not match metadata");
  if (dict.codes.has_value() != dict.meta.hash.has_value()) {
    throw InvalidArgument("hash metadata and code presence disagree");
  }
  if (dict.codes) {
    if (dict.codes->rows() != dict.features.rows()) throw InvalidArgument("code rows differ from feature rows");
    if (dict.codes->layout() != CodeLayout::make(dict.meta.hash->code_length, dict.meta.hash->subsample)) {
      throw InvalidArgument("code layout does not match hash metadata");
    }
  }
}

SeparationDictionary build_dictionary(const std::vector<MixSpec>& pairs, const FrontendConfig& frontend) {
  if (pairs.empty()) throw InvalidArgument("no training pairs");
  const int sample_rate = pairs.front().speech.sample_rate;
  const FeatureExtractor extractor(frontend, sample_rate);

  SeparationDictionary dict;
  dict.meta.sample_rate = sample_rate;
  dict.meta.frontend = frontend;
  dict.features = FeatureMatrix(0, extractor.dim(), frontend.kind);
  dict.ibm = BinaryMatrix(0, frontend.stft.bins());

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].speech.sample_rate != sample_rate) {
      throw InvalidArgument("training pair " + std::to_string(i) + " has sample rate " +
                            std::to_string(pairs[i].speech.sample_rate) + ", expected " + std::to_string(sample_rate));
    }
    const MixResult mixed = mix_at_snr(pairs[i]);
    const auto mixture_spec = stft(mixed.mixture, frontend.stft);
    const auto speech_spec = stft(pairs[i].speech, frontend.stft);
    const auto noise_spec = stft(mixed.scaled_noise, frontend.stft);
    dict.features.append(extractor.extract(mixture_spec));
    dict.ibm.append(compute_ibm(speech_spec, noise_spec));
  }
  return dict;
}

void attach_codes(SeparationDictionary& dict, const HashParams& params) {
  const auto table = generate_permutations(params.seed, params.code_length, params.subsample, dict.features.dim());
  dict.codes = hash_matrix(dict.features, table);
  dict.meta.hash = params;
}

}  // namespace wtasep
