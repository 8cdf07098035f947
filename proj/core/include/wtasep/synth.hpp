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

#include "wtasep/audio.hpp"
#include "wtasep/features.hpp"

namespace wtasep::synth {

/// Harmonic "speech": voiced syllables drawn from a ten-vowel formant
/// inventory, with a per-speaker fundamental (90-240 Hz) gliding within each
/// syllable, a -6 dB/octave source tilt and short pauses between syllables.
AudioBuffer harmonic_speech(std::uint64_t seed, std::size_t num_samples, int sample_rate = 16000);

/// A resonant band plus low-pass broadband noise, slowly amplitude
/// modulated. The `noise_type` selects the colouring and modulation rate so
/// that different realizations of one type share their statistics.
AudioBuffer modulated_noise(std::uint64_t seed, std::size_t num_samples, int noise_type = 0,
                            int sample_rate = 16000);

/// Feature rows whose spectral peaks drift smoothly over time: a sum of
/// Gaussian bumps with slowly moving centres plus a small positive floor.
FeatureMatrix smooth_spectrogram(std::uint64_t seed, std::size_t frames, std::size_t dim);

}  // namespace wtasep::synth
