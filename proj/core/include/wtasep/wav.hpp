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

#include <filesystem>

#include "wtasep/audio.hpp"

namespace wtasep {

enum class WavSampleFormat { kPcm16, kFloat32 };

/// Reads a mono RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float
/// samples (plain or WAVE_FORMAT_EXTENSIBLE). PCM16 is scaled to [-1, 1).
/// Multi-channel files and other encodings raise InvalidArgument.
AudioBuffer read_wav(const std::filesystem::path& path);

/// Writes mono audio. PCM16 output is clipped to [-1, 1].
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio,
               WavSampleFormat format = WavSampleFormat::kFloat32);

}  // namespace wtasep
