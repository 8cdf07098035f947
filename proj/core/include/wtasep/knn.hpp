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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wtasep/binary_matrix.hpp"
#include "wtasep/features.hpp"
#include "wtasep/wta_hash.hpp"

namespace wtasep {

enum class SimilarityMode { kCosine, kHamming };

std::string_view to_string(SimilarityMode mode) noexcept;
SimilarityMode parse_similarity_mode(std::string_view text);

/// The K retained dictionary rows, best first. Ordering is by descending
/// score, then ascending dictionary index.
struct NeighborSet {
  std::vector<std::size_t> indices;
  std::vector<double> scores;
  /// Lowest score in the set (0 when empty).
  double a_min = 0.0;

  std::size_t size() const noexcept { return indices.size(); }
};

/// dot(x, h) / (|x| |h|), accumulated in double. Defined as 0 when either
/// vector is all zeros.
double cosine_similarity(std::span<const float> x, std::span<const float> h) noexcept;

/// Cosine-mode search over the rows of a feature matrix. Precomputes row norms.
class CosineIndex {
 public:
  explicit CosineIndex(const FeatureMatrix& features);

  std::size_t rows() const noexcept { return features_->rows(); }
  std::size_t dim() const noexcept { return features_->dim(); }
  double score(std::span<const float> query, double query_norm, std::size_t t) const noexcept;

  const FeatureMatrix& features() const noexcept { return *features_; }
  double norm(std::size_t t) const { return norms_[t]; }

 private:
  const FeatureMatrix* features_;
  std::vector<double> norms_;
};

/// Single linear scan. The first K rows fill the set
/// unconditionally; afterwards row t replaces the current farthest member
/// only if its similarity is strictly greater, and the farthest member among
/// equal scores is the one with the highest index. The result therefore equals
/// the top K of a full sort by (score desc, index asc).
/// Throws InvalidArgument("dictionary smaller than K") when T < K or K == 0.
NeighborSet knn_search(std::span<const float> query, const CosineIndex& index, std::size_t k);
NeighborSet knn_search(std::span<const float> query, const FeatureMatrix& features, std::size_t k);

/// Hamming-mode search: similarity is matching_codes / L on packed rows.
/// Comparisons use integer match counts, so ties are exact.
NeighborSet knn_search(std::span<const std::uint64_t> query, const HashCodes& codes,
                       std::size_t k);

/// Mean of the selected IBM rows: entry f = (#neighbors with bit f set) / K.
std::vector<double> estimate_mask(const NeighborSet& neighbors, const BinaryMatrix& ibm);

/// Element-wise scaling of complex coefficients by a real mask.
std::vector<std::complex<double>> apply_mask(std::span<const double> mask,
                                             std::span<const std::complex<double>> frame);

}  // namespace wtasep
