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

#include "wtasep/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wtasep/error.hpp"
#include "wtasep/knn.hpp"

namespace wtasep {
namespace {

std::vector<double> ranks_with_ties(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return v[a] < v[b] || (v[a] == v[b] && a < b);
  });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j - 1);
    for (std::size_t q = i; q < j; ++q) ranks[order[q]] = mean_rank;
    i = j;
  }
  return ranks;
}

std::vector<double> upper_triangle(const AffinityMatrix& m) {
  std::vector<double> out;
  out.reserve(m.size * (m.size - 1) / 2);
  for (std::size_t i = 0; i < m.size; ++i) {
    for (std::size_t j = i + 1; j < m.size; ++j) out.push_back(m.at(i, j));
  }
  return out;
}

}  // namespace

AffinityMatrix cosine_affinity(const FeatureMatrix& features, std::span<const std::size_t> rows) {
  AffinityMatrix m{rows.size(), std::vector<double>(rows.size() * rows.size())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i; j < rows.size(); ++j) {
      const double s = cosine_similarity(features.row(rows[i]), features.row(rows[j]));
      m.values[i * m.size + j] = s;
      m.values[j * m.size + i] = s;
    }
  }
  return m;
}

AffinityMatrix hamming_affinity(const HashCodes& codes, std::span<const std::size_t> rows) {
  for (auto r : rows) {
    if (r >= codes.rows()) throw InvalidArgument("code row index out of range");
  }
  const CodeMatcher matcher(codes.layout());
  const double scale = 1.0 / static_cast<double>(codes.code_length());
  AffinityMatrix m{rows.size(), std::vector<double>(rows.size() * rows.size())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i; j < rows.size(); ++j) {
      const double s = static_cast<double>(matcher(codes.row(rows[i]).data(), codes.row(rows[j]).data())) * scale;
      m.values[i * m.size + j] = s;
      m.values[j * m.size + i] = s;
    }
  }
  return m;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("spearman inputs differ in length");
  if (a.size() < 2) throw InvalidArgument("spearman needs at least two observations");
  const auto ra = ranks_with_ties(a);
  const auto rb = ranks_with_ties(b);
  const double mean = 0.5 * static_cast<double>(a.size() - 1);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

double affinity_correlation(const AffinityMatrix& a, const AffinityMatrix& b) {
  if (a.size != b.size) throw InvalidArgument("affinity matrices differ in size");
  return spearman(upper_triangle(a), upper_triangle(b));
}

std::vector<std::size_t> evenly_spaced_rows(std::size_t n, std::size_t limit) {
  const std::size_t count = std::min(n, limit);
  std::vector<std::size_t> rows(count);
  for (std::size_t i = 0; i < count; ++i) rows[i] = count == n ? i : (i * n) / count;
  return rows;
}

}  // namespace wtasep
