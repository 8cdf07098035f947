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

#include "wtasep/knn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "wtasep/error.hpp"

namespace wtasep {
namespace {

template <typename Score>
struct Candidate {
  Score score;
  std::size_t index;
};

template <typename Score>
bool better(const Candidate<Score>& a, const Candidate<Score>& b) noexcept {
  if (a.score != b.score) return a.score > b.score;
  return a.index < b.index;
}

void check_k(std::size_t k, std::size_t rows) {
  if (k == 0) throw InvalidArgument("K must be at least 1");
  if (rows < k) {
    throw InvalidArgument("dictionary smaller than K (T=" + std::to_string(rows) + ", K=" + std::to_string(k) + ")");
  }
}

// One pass over t = 0..rows-1. The heap keeps its worst member on top, so a
// later row (with a larger index) only enters when its score is strictly
// higher.
template <typename Score, typename ScoreFn>
std::vector<Candidate<Score>> scan(std::size_t rows, std::size_t k, ScoreFn&& score_of) {
  const auto cmp = [](const Candidate<Score>& a, const Candidate<Score>& b) { return better(a, b); };
  std::vector<Candidate<Score>> heap;
  heap.reserve(k);
  for (std::size_t t = 0; t < rows; ++t) {
    const Score s = score_of(t);
    if (heap.size() < k) {
      heap.push_back({s, t});
      std::push_heap(heap.begin(), heap.end(), cmp);
    } else if (s > heap.front().score) {
      std::pop_heap(heap.begin(), heap.end(), cmp);
      heap.back() = {s, t};
      std::push_heap(heap.begin(), heap.end(), cmp);
    }
  }
  std::sort(heap.begin(), heap.end(), cmp);
  return heap;
}

template <typename Score>
NeighborSet to_neighbor_set(const std::vector<Candidate<Score>>& found, double scale) {
  NeighborSet set;
  set.indices.reserve(found.size());
  set.scores.reserve(found.size());
  for (const auto& c : found) {
    set.indices.push_back(c.index);
    set.scores.push_back(static_cast<double>(c.score) * scale);
  }
  set.a_min = set.scores.empty() ? 0.0 : set.scores.back();
  return set;
}

double norm_of(std::span<const float> v) noexcept {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * x;
  return std::sqrt(sum);
}

double dot_of(std::span<const float> a, std::span<const float> b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += static_cast<double>(a[i]) * b[i];
  return sum;
}

}  // namespace

std::string_view to_string(SimilarityMode mode) noexcept {
  return mode == SimilarityMode::kCosine ? "cosine" : "hamming";
}

SimilarityMode parse_similarity_mode(std::string_view text) {
  if (text == "cosine") return SimilarityMode::kCosine;
  if (text == "hamming") return SimilarityMode::kHamming;
  throw InvalidArgument("unknown mode '" + std::string(text) + "' (expected cosine or hamming)");
}

double cosine_similarity(std::span<const float> x, std::span<const float> h) noexcept {
  const double nx = norm_of(x);
  const double nh = norm_of(h);
  if (nx == 0.0 || nh == 0.0) return 0.0;
  return dot_of(x, h) / (nx * nh);
}

CosineIndex::CosineIndex(const FeatureMatrix& features) : features_(&features), norms_(features.rows()) {
  for (std::size_t t = 0; t < features.rows(); ++t) norms_[t] = norm_of(features.row(t));
}

double CosineIndex::score(std::span<const float> query, double query_norm, std::size_t t) const noexcept {
  const double nh = norms_[t];
  if (query_norm == 0.0 || nh == 0.0) return 0.0;
  return dot_of(query, features_->row(t)) / (query_norm * nh);
}

NeighborSet knn_search(std::span<const float> query, const CosineIndex& index, std::size_t k) {
  check_k(k, index.rows());
  if (query.size() != index.dim()) {
    throw InvalidArgument("query has " + std::to_string(query.size()) + " entries, dictionary D=" +
                          std::to_string(index.dim()));
  }
  const double qn = norm_of(query);
  const auto found = scan<double>(index.rows(), k, [&](std::size_t t) { return index.score(query, qn, t); });
  return to_neighbor_set(found, 1.0);
}

NeighborSet knn_search(std::span<const float> query, const FeatureMatrix& features, std::size_t k) {
  return knn_search(query, CosineIndex(features), k);
}

NeighborSet knn_search(std::span<const std::uint64_t> query, const HashCodes& codes, std::size_t k) {
  check_k(k, codes.rows());
  const CodeLayout& layout = codes.layout();
  if (query.size() != layout.words_per_row) throw InvalidArgument("query code row does not match dictionary layout");
  const CodeMatcher matcher(layout);
  const std::uint64_t* rows = codes.words().data();
  const std::size_t stride = layout.words_per_row;
  const auto found = scan<std::size_t>(codes.rows(), k, [&](std::size_t t) {
    return matcher(query.data(), rows + t * stride);
  });
  return to_neighbor_set(found, 1.0 / static_cast<double>(layout.code_length));
}

std::vector<double> estimate_mask(const NeighborSet& neighbors, const BinaryMatrix& ibm) {
  if (neighbors.indices.empty()) throw InvalidArgument("cannot estimate a mask from an empty neighbor set");
  std::vector<std::size_t> counts(ibm.cols(), 0);
  for (std::size_t idx : neighbors.indices) {
    if (idx >= ibm.rows()) throw InvalidArgument("neighbor index " + std::to_string(idx) + " is out of range");
    const auto words = ibm.row_words(idx);
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        ++counts[w * 64 + static_cast<std::size_t>(b)];
        bits &= bits - 1;
      }
    }
  }
  std::vector<double> mask(ibm.cols());
  const double k = static_cast<double>(neighbors.indices.size());
  for (std::size_t f = 0; f < mask.size(); ++f) mask[f] = static_cast<double>(counts[f]) / k;
  return mask;
}

std::vector<std::complex<double>> apply_mask(std::span<const double> mask,
                                             std::span<const std::complex<double>> frame) {
  if (mask.size() != frame.size()) {
    throw InvalidArgument("mask has " + std::to_string(mask.size()) + " bins, frame has " +
                          std::to_string(frame.size()));
  }
  std::vector<std::complex<double>> out(frame.size());
  for (std::size_t f = 0; f < frame.size(); ++f) out[f] = frame[f] * mask[f];
  return out;
}

}  // namespace wtasep
