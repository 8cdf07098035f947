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

#include "wtasep/audio.hpp"

#include <cmath>
#include <string>

#include "wtasep/error.hpp"

namespace wtasep {

void validate(const AudioBuffer& audio) {
  if (audio.sample_rate <= 0) {
    throw InvalidArgument("sample rate must be positive, got " + std::to_string(audio.sample_rate));
  }
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    if (!std::isfinite(audio.samples[i])) {
      throw InvalidArgument("non-finite sample at index " + std::to_string(i));
    }
  }
}

double energy(std::span<const double> samples) noexcept {
  double sum = 0.0;
  for (double v : samples) sum += v * v;
  return sum;
}

}  // namespace wtasep
