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

#include <span>

#include "wtasep/audio.hpp"

namespace wtasep {

/// Ratios whose denominator vanishes are reported as +/- this value with the
/// matching `*_capped` flag set.
inline constexpr double kScoreCapDb = 200.0;

struct BssScores {
  double sdr = 0.0;
  double sir = 0.0;
  double sar = 0.0;
  bool sdr_capped = false;
  bool sir_capped = false;
  bool sar_capped = false;
};

/// Whole-signal BSS-eval with a time-invariant gain. The estimate is split into
///   e_target = projection onto span{target}
///   e_interf = projection onto span{target, interference} - e_target
///   e_artif  = estimate - projection onto span{target, interference}
/// and
///   SDR = 10 log10(|e_target|^2 / |e_interf + e_artif|^2)
///   SIR = 10 log10(|e_target|^2 / |e_interf|^2)
///   SAR = 10 log10(|e_target + e_interf|^2 / |e_artif|^2).
/// Throws InvalidArgument on length or rate mismatch, a zero target or
/// interference, or collinear target and interference.
BssScores bss_eval(std::span<const double> estimate, std::span<const double> target,
                   std::span<const double> interference);
BssScores bss_eval(const AudioBuffer& estimate, const AudioBuffer& target,
                   const AudioBuffer& interference);

/// SDR(estimate) - SDR(mixture).
double sdr_improvement(const AudioBuffer& mixture, const AudioBuffer& estimate,
                       const AudioBuffer& target, const AudioBuffer& interference);

}  // namespace wtasep
