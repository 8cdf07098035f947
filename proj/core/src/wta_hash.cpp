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

#include "wtasep/wta_hash.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "wtasep/error.hpp"
#include "wtasep/instrumentation.hpp"
#include "wtasep/rng.hpp"

namespace wtasep {
namespace {

void check_table_shape(std::size_t code_length, std::size_t subsample, std::size_t dim) {
  if (code_length == 0) throw InvalidArgument("code length L must be at least 1");
  if (subsample < 2) throw InvalidArgument("subsample size M must be at least 2, got " + std::to_string(subsample));
  if (subsample > dim) {
    throw InvalidArgument("subsample size M=" + std::to_string(subsample) + " exceeds dimensionality D=" +
                          std::to_string(dim));
  }
  if (subsample > 65536) throw InvalidArgument("subsample size M must not exceed 65536");
}

template <typename T>
std::vector<WtaCode> hash_impl(std::span<const T> x, const PermutationTable& table) {
  if (x.size() != table.dim()) {
    throw InvalidArgument("input has " + std::to_string(x.size()) + " entries, table expects D=" +
                          std::to_string(table.dim()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i])) throw InvalidArgument("NaN at index " + std::to_string(i) + " cannot be ranked");
  }
  instrumentation::record_hash_call();
  std::vector<WtaCode> codes(table.code_length());
  for (std::size_t l = 0; l < codes.size(); ++l) {
    const auto row = table.row(l);
    std::size_t best = 0;
    T best_value = x[row[0]];
    for (std::size_t m = 1; m < row.size(); ++m) {
      if (x[row[m]] > best_value) {
        best_value = x[row[m]];
        best = m;
      }
    }
    codes[l] = static_cast<WtaCode>(best);
  }
  return codes;
}

// Low bit of each of the first `count` fields of width `bits`.
std::uint64_t field_low_bits(unsigned bits, std::size_t count) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < count; ++i) mask |= std::uint64_t{1} << (i * bits);
  return mask;
}

template <unsigned Bits>
std::size_t mismatches(const std::uint64_t* a, const std::uint64_t* b, std::size_t words,
                       std::uint64_t full_mask, std::uint64_t tail_mask) noexcept {
  auto fold = [](std::uint64_t x) {
    std::uint64_t y = x;
    for (unsigned s = 1; s < Bits; ++s) y |= x >> s;
    return y;
  };
  std::size_t count = 0;
  for (std::size_t w = 0; w + 1 < words; ++w) {
    count += static_cast<std::size_t>(std::popcount(fold(a[w] ^ b[w]) & full_mask));
  }
  count += static_cast<std::size_t>(std::popcount(fold(a[words - 1] ^ b[words - 1]) & tail_mask));
  return count;
}

std::size_t mismatches_generic(const std::uint64_t* a, const std::uint64_t* b, std::size_t words, unsigned bits,
                               std::uint64_t full_mask, std::uint64_t tail_mask) noexcept {
  std::size_t count = 0;
  for (std::size_t w = 0; w < words; ++w) {
    const std::uint64_t x = a[w] ^ b[w];
    std::uint64_t y = x;
    for (unsigned s = 1; s < bits; ++s) y |= x >> s;
    count += static_cast<std::size_t>(std::popcount(y & (w + 1 == words ? tail_mask : full_mask)));
  }
  return count;
}

}  // namespace

PermutationTable::PermutationTable(std::size_t code_length, std::size_t subsample, std::size_t dim,
                                   std::vector<std::uint32_t> entries, std::uint64_t seed)
    : code_length_(code_length), subsample_(subsample), dim_(dim), seed_(seed), entries_(std::move(entries)) {
  check_table_shape(code_length_, subsample_, dim_);
  if (entries_.size() != code_length_ * subsample_) {
    throw InvalidArgument("permutation table needs L*M = " + std::to_string(code_length_ * subsample_) +
                          " entries, got " + std::to_string(entries_.size()));
  }
  std::vector<std::size_t> seen(dim_, 0);
  for (std::size_t l = 0; l < code_length_; ++l) {
    for (auto idx : row(l)) {
      if (idx >= dim_) throw InvalidArgument("permutation index " + std::to_string(idx) + " is out of range");
      if (seen[idx] == l + 1) throw InvalidArgument("permutation row " + std::to_string(l) + " repeats an index");
      seen[idx] = l + 1;
    }
  }
}

PermutationTable generate_permutations(std::uint64_t seed, std::size_t code_length, std::size_t subsample,
                                       std::size_t dim) {
  check_table_shape(code_length, subsample, dim);
  Xoshiro256StarStar rng(seed);
  std::vector<std::uint32_t> pool(dim);
  std::vector<std::uint32_t> entries;
  entries.reserve(code_length * subsample);
  for (std::size_t l = 0; l < code_length; ++l) {
    std::iota(pool.begin(), pool.end(), std::uint32_t{0});
    for (std::size_t i = 0; i < subsample; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(dim - i));
      std::swap(pool[i], pool[j]);
      entries.push_back(pool[i]);
    }
  }
  return PermutationTable(code_length, subsample, dim, std::move(entries), seed);
}

std::vector<WtaCode> hash_vector(std::span<const float> x, const PermutationTable& table) {
  return hash_impl(x, table);
}

std::vector<WtaCode> hash_vector(std::span<const double> x, const PermutationTable& table) {
  return hash_impl(x, table);
}

unsigned bits_for_subsample(std::size_t subsample) {
  if (subsample < 2) throw InvalidArgument("subsample size M must be at least 2");
  return static_cast<unsigned>(std::bit_width(subsample - 1));
}

CodeLayout CodeLayout::make(std::size_t code_length, std::size_t subsample) {
  if (code_length == 0) throw InvalidArgument("code length L must be at least 1");
  if (subsample > 65536) throw InvalidArgument("subsample size M must not exceed 65536");
  CodeLayout layout;
  layout.code_length = code_length;
  layout.subsample = subsample;
  layout.bits_per_code = bits_for_subsample(subsample);
  layout.codes_per_word = 64 / layout.bits_per_code;
  layout.words_per_row = (code_length + layout.codes_per_word - 1) / layout.codes_per_word;
  return layout;
}

void pack_into(std::span<const WtaCode> codes, const CodeLayout& layout, std::span<std::uint64_t> out) {
  if (codes.size() != layout.code_length) {
    throw InvalidArgument("expected " + std::to_string(layout.code_length) + " codes, got " +
                          std::to_string(codes.size()));
  }
  if (out.size() != layout.words_per_row) throw InvalidArgument("output span does not match the code layout");
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t l = 0; l < codes.size(); ++l) {
    if (codes[l] >= layout.subsample) {
      throw InvalidArgument("code " + std::to_string(codes[l]) + " at position " + std::to_string(l) +
                            " is not below M=" + std::to_string(layout.subsample));
    }
    const std::size_t word = l / layout.codes_per_word;
    const std::size_t shift = (l % layout.codes_per_word) * layout.bits_per_code;
    out[word] |= static_cast<std::uint64_t>(codes[l]) << shift;
  }
}

std::vector<std::uint64_t> pack(std::span<const WtaCode> codes, const CodeLayout& layout) {
  std::vector<std::uint64_t> words(layout.words_per_row);
  pack_into(codes, layout, words);
  return words;
}

std::vector<WtaCode> unpack(std::span<const std::uint64_t> words, const CodeLayout& layout) {
  if (words.size() != layout.words_per_row) throw InvalidArgument("packed row does not match the code layout");
  const std::uint64_t field = (std::uint64_t{1} << layout.bits_per_code) - 1;
  std::vector<WtaCode> codes(layout.code_length);
  for (std::size_t l = 0; l < codes.size(); ++l) {
    const std::size_t word = l / layout.codes_per_word;
    const std::size_t shift = (l % layout.codes_per_word) * layout.bits_per_code;
    codes[l] = static_cast<WtaCode>((words[word] >> shift) & field);
  }
  return codes;
}

CodeMatcher::CodeMatcher(const CodeLayout& layout) noexcept
    : code_length_(layout.code_length),
      words_(layout.words_per_row),
      bits_(layout.bits_per_code),
      full_mask_(field_low_bits(layout.bits_per_code, layout.codes_per_word)),
      tail_mask_(field_low_bits(layout.bits_per_code,
                                layout.code_length - (layout.words_per_row - 1) * layout.codes_per_word)) {}

std::size_t CodeMatcher::operator()(const std::uint64_t* a, const std::uint64_t* b) const noexcept {
  std::size_t diff = 0;
  switch (bits_) {
    case 1: diff = mismatches<1>(a, b, words_, full_mask_, tail_mask_); break;
    case 2: diff = mismatches<2>(a, b, words_, full_mask_, tail_mask_); break;
    case 3: diff = mismatches<3>(a, b, words_, full_mask_, tail_mask_); break;
    case 4: diff = mismatches<4>(a, b, words_, full_mask_, tail_mask_); break;
    default: diff = mismatches_generic(a, b, words_, bits_, full_mask_, tail_mask_); break;
  }
  return code_length_ - diff;
}

std::size_t matching_codes(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                           const CodeLayout& layout) noexcept {
  return CodeMatcher(layout)(a.data(), b.data());
}

HashCodes::HashCodes(std::size_t rows, const CodeLayout& layout)
    : rows_(rows), layout_(layout), words_(rows * layout.words_per_row, 0) {}

HashCodes hash_matrix(const FeatureMatrix& features, const PermutationTable& table) {
  if (features.dim() != table.dim()) {
    throw InvalidArgument("features have D=" + std::to_string(features.dim()) + ", table expects D=" +
                          std::to_string(table.dim()));
  }
  HashCodes codes(features.rows(), CodeLayout::make(table.code_length(), table.subsample()));
  for (std::size_t n = 0; n < features.rows(); ++n) {
    pack_into(hash_vector(features.row(n), table), codes.layout(), codes.row(n));
  }
  return codes;
}

std::vector<std::uint64_t> hash_packed(std::span<const float> x, const PermutationTable& table) {
  return pack(hash_vector(x, table), CodeLayout::make(table.code_length(), table.subsample()));
}

double hamming_similarity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                          const CodeLayout& layout) {
  if (a.size() != layout.words_per_row || b.size() != layout.words_per_row) {
    throw InvalidArgument("packed rows do not match the code layout");
  }
  return static_cast<double>(matching_codes(a, b, layout)) / static_cast<double>(layout.code_length);
}

double hamming_similarity(const HashCodes& a, std::size_t i, const HashCodes& b, std::size_t j) {
  if (a.code_length() != b.code_length() || a.subsample() != b.subsample()) {
    throw InvalidArgument("code rows differ in L or M");
  }
  if (i >= a.rows() || j >= b.rows()) throw InvalidArgument("code row index out of range");
  return hamming_similarity(a.row(i), b.row(j), a.layout());
}

}  // namespace wtasep
