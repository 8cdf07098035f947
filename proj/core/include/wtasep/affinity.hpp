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

#include "wtasep/features.hpp"
#include "wtasep/wta_hash.hpp"

namespace wtasep {

/// Dense symmetric n x n matrix, row-major.
struct AffinityMatrix {
  std::size_t size = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * size + j]; }
};

/// Cosine similarity between selected feature rows.
AffinityMatrix cosine_affinity(const FeatureMatrix& features, std::span<const std::size_t> rows);
/// Hamming similarity between the same selection of code rows.
AffinityMatrix hamming_affinity(const HashCodes& codes, std::span<const std::size_t> rows);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either input is constant. Sizes must match and be at least 2.
double spearman(std::span<const double> a, std::span<const double> b);

/// Spearman correlation over the strictly upper triangles (i < j).
double affinity_correlation(const AffinityMatrix& a, const AffinityMatrix& b);

/// At most `limit` evenly spaced indices in [0, n), always including 0.
std::vector<std::size_t> evenly_spaced_rows(std::size_t n, std::size_t limit);

}  // namespace wtasep
