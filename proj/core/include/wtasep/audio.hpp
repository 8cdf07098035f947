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
#include <span>
#include <vector>

namespace wtasep {

/// Mono audio: real samples nominally in [-1, 1] at a fixed sample rate.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  std::size_t size() const noexcept { return samples.size(); }
  std::span<const double> view() const noexcept { return samples; }
};

/// Throws InvalidArgument unless sample_rate > 0 and every sample is finite.
void validate(const AudioBuffer& audio);

/// Sum of squared samples.
double energy(std::span<const double> samples) noexcept;

}  // namespace wtasep
