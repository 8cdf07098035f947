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

// Independent reference routines used only by tests. None of them call into
// the library code they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

namespace wtasep::oracle {

/// O(N^2) DFT of one real frame, bins 0..N/2.
inline std::vector<std::complex<double>> direct_dft(std::span<const double> frame) {
  const std::size_t n = frame.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    long double re = 0, im = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const long double angle = -2.0L * std::numbers::pi_v<long double> *
                                static_cast<long double>((k * i) % n) / static_cast<long double>(n);
      re += frame[i] * std::cos(angle);
      im += frame[i] * std::sin(angle);
    }
    out[k] = {static_cast<double>(re), static_cast<double>(im)};
  }
  return out;
}

inline std::vector<double> periodic_hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
  }
  return w;
}

/// Materializes each subsampled vector and scans it for its first maximum.
template <typename T>
std::vector<std::uint16_t> brute_force_hash(std::span<const T> x,
                                            const std::vector<std::vector<std::uint32_t>>& rows) {
  std::vector<std::uint16_t> codes;
  for (const auto& row : rows) {
    std::vector<T> picked;
    for (auto idx : row) picked.push_back(x[idx]);
    std::size_t best = 0;
    for (std::size_t m = 1; m < picked.size(); ++m) {
      if (picked[m] > picked[best]) best = m;
    }
    codes.push_back(static_cast<std::uint16_t>(best));
  }
  return codes;
}

inline unsigned ceil_log2(std::size_t m) {
  unsigned bits = 0;
  while ((std::size_t{1} << bits) < m) ++bits;
  return bits;
}

/// Sets one bit at a time: code l sits in word l / (64 / bits) at bit offset
/// (l % (64 / bits)) * bits.
inline std::vector<std::uint64_t> reference_pack(std::span<const std::uint16_t> codes,
                                                 std::size_t subsample) {
  const unsigned bits = ceil_log2(subsample);
  const std::size_t per_word = 64 / bits;
  std::vector<std::uint64_t> words((codes.size() + per_word - 1) / per_word, 0);
  for (std::size_t l = 0; l < codes.size(); ++l) {
    for (unsigned b = 0; b < bits; ++b) {
      if ((codes[l] >> b) & 1U) {
        words[l / per_word] |= std::uint64_t{1} << ((l % per_word) * bits + b);
      }
    }
  }
  return words;
}

inline std::size_t naive_matches(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] == b[i] ? 1 : 0;
  return n;
}

inline double naive_cosine(std::span<const float> x, std::span<const float> h) {
  double dot = 0, xx = 0, hh = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += static_cast<double>(x[i]) * h[i];
    xx += static_cast<double>(x[i]) * x[i];
    hh += static_cast<double>(h[i]) * h[i];
  }
  if (xx == 0 || hh == 0) return 0.0;
  return dot / (std::sqrt(xx) * std::sqrt(hh));
}

/// Sorts every score and keeps the first K under (score desc, index asc).
template <typename Score>
std::vector<std::size_t> full_sort_top_k(const std::vector<Score>& scores, std::size_t k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  order.resize(k);
  return order;
}

struct GramScores {
  double sdr, sir, sar;
};

/// Least-squares projection through the 2x2 Gram matrix, solved by Cramer's
/// rule in long double.
inline GramScores gram_projection_bss(std::span<const double> est, std::span<const double> s,
                                      std::span<const double> n) {
  long double ss = 0, nn = 0, sn = 0, es = 0, en = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    ss += static_cast<long double>(s[i]) * s[i];
    nn += static_cast<long double>(n[i]) * n[i];
    sn += static_cast<long double>(s[i]) * n[i];
    es += static_cast<long double>(est[i]) * s[i];
    en += static_cast<long double>(est[i]) * n[i];
  }
  const long double det = ss * nn - sn * sn;
  const long double a = (es * nn - en * sn) / det;
  const long double b = (en * ss - es * sn) / det;
  const long double target_gain = es / ss;
  long double t2 = 0, i2 = 0, a2 = 0, ia2 = 0, ti2 = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const long double et = target_gain * s[i];
    const long double proj = a * s[i] + b * n[i];
    const long double ei = proj - et;
    const long double ea = est[i] - proj;
    t2 += et * et;
    i2 += ei * ei;
    a2 += ea * ea;
    ia2 += (ei + ea) * (ei + ea);
    ti2 += (et + ei) * (et + ei);
  }
  auto db = [](long double num, long double den) {
    return static_cast<double>(10.0L * std::log10(num / den));
  };
  return {db(t2, ia2), db(t2, i2), db(ti2, a2)};
}

/// Average ranks (1-based) with ties sharing the mean of their positions.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t q = i; q <= j; ++q) ranks[order[q]] = r;
    i = j + 1;
  }
  return ranks;
}

/// Pearson correlation of average ranks.
inline double spearman(std::span<const double> a, std::span<const double> b) {
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(ra.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  long double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  return static_cast<double>(cov / std::sqrt(va * vb));
}

}  // namespace wtasep::oracle
