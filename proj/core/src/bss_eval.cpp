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

#include "wtasep/bss_eval.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "wtasep/error.hpp"

namespace wtasep {
namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double ratio_db(double num, double den, bool& capped) {
  capped = false;
  if (den <= 0.0) {
    capped = true;
    return num > 0.0 ? kScoreCapDb : 0.0;
  }
  if (num <= 0.0) {
    capped = true;
    return -kScoreCapDb;
  }
  const double db = 10.0 * std::log10(num / den);
  if (db > kScoreCapDb) {
    capped = true;
    return kScoreCapDb;
  }
  if (db < -kScoreCapDb) {
    capped = true;
    return -kScoreCapDb;
  }
  return db;
}

}  // namespace

BssScores bss_eval(std::span<const double> estimate, std::span<const double> target,
                   std::span<const double> interference) {
  if (estimate.size() != target.size() || estimate.size() != interference.size()) {
    throw InvalidArgument("bss_eval inputs differ in length (" + std::to_string(estimate.size()) + ", " +
                          std::to_string(target.size()) + ", " + std::to_string(interference.size()) + ")");
  }
  const double ss = dot(target, target);
  const double nn = dot(interference, interference);
  if (ss == 0.0) throw InvalidArgument("target signal is all zeros");
  if (nn == 0.0) throw InvalidArgument("interference signal is all zeros");

  // Orthogonalize the interference against the target so both projections
  // are one-dimensional.
  const std::size_t n = estimate.size();
  const double ns = dot(interference, target) / ss;
  std::vector<double> ortho(n);
  for (std::size_t i = 0; i < n; ++i) ortho[i] = interference[i] - ns * target[i];
  const double oo = dot(ortho, ortho);
  if (oo <= 1e-12 * nn) throw InvalidArgument("target and interference are collinear");

  const double target_gain = dot(estimate, target) / ss;
  const double interf_gain = dot(estimate, ortho) / oo;

  double e_target = 0.0, e_interf = 0.0, e_artif = 0.0, e_distortion = 0.0, e_source = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = target_gain * target[i];
    const double in = interf_gain * ortho[i];
    const double a = estimate[i] - t - in;
    e_target += t * t;
    e_interf += in * in;
    e_artif += a * a;
    e_distortion += (in + a) * (in + a);
    e_source += (t + in) * (t + in);
  }

  BssScores scores;
  scores.sdr = ratio_db(e_target, e_distortion, scores.sdr_capped);
  scores.sir = ratio_db(e_target, e_interf, scores.sir_capped);
  scores.sar = ratio_db(e_source, e_artif, scores.sar_capped);
  return scores;
}

BssScores bss_eval(const AudioBuffer& estimate, const AudioBuffer& target, const AudioBuffer& interference) {
  if (estimate.sample_rate != target.sample_rate || estimate.sample_rate != interference.sample_rate) {
    throw InvalidArgument("bss_eval inputs differ in sample rate");
  }
  return bss_eval(estimate.view(), target.view(), interference.view());
}

double sdr_improvement(const AudioBuffer& mixture, const AudioBuffer& estimate, const AudioBuffer& target,
                       const AudioBuffer& interference) {
  return bss_eval(estimate, target, interference).sdr - bss_eval(mixture, target, interference).sdr;
}

}  // namespace wtasep
