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
#include <cstdint>
#include <span>
#include <vector>

#include "wtasep/features.hpp"

namespace wtasep {

using WtaCode = std::uint16_t;

/// L rows of M distinct dimension indices (0-based) defining one WTA hash
/// function over D-dimensional inputs.
class PermutationTable {
 public:
  /// Explicit table. Throws InvalidArgument when entries.size() != L*M, an
  /// entry is >= D, a row repeats an index, M < 2, M > D or L == 0.
  PermutationTable(std::size_t code_length, std::size_t subsample, std::size_t dim,
                   std::vector<std::uint32_t> entries, std::uint64_t seed = 0);

  std::size_t code_length() const noexcept { return code_length_; }
  std::size_t subsample() const noexcept { return subsample_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const std::uint32_t> row(std::size_t l) const {
    return {entries_.data() + l * subsample_, subsample_};
  }
  std::span<const std::uint32_t> entries() const noexcept { return entries_; }

  friend bool operator==(const PermutationTable&, const PermutationTable&) = default;

 private:
  std::size_t code_length_;
  std::size_t subsample_;
  std::size_t dim_;
  std::uint64_t seed_;
  std::vector<std::uint32_t> entries_;
};

/// Draws L rows of M distinct indices from {0..D-1}. Row l is the first M
/// slots of a partial Fisher-Yates shuffle of 0..D-1 driven by a
/// Xoshiro256StarStar stream seeded with `seed`; rows are drawn in order from
/// one stream. Requires 2 <= M <= D and L >= 1.
PermutationTable generate_permutations(std::uint64_t seed, std::size_t code_length,
                                       std::size_t subsample, std::size_t dim);

/// Winner positions of `x` under `table`: code l is the position m in
/// [0, M) whose entry x[row_l[m]] is largest, lowest position on ties.
/// Throws InvalidArgument on a size mismatch or a NaN entry.
std::vector<WtaCode> hash_vector(std::span<const float> x, const PermutationTable& table);
std::vector<WtaCode> hash_vector(std::span<const double> x, const PermutationTable& table);

/// Bit layout of packed codes: ceil(log2 M) bits per code, packed LSB-first
/// into 64-bit words, no code straddling a word boundary.
struct CodeLayout {
  std::size_t code_length = 0;     // L
  std::size_t subsample = 0;       // M
  unsigned bits_per_code = 0;      // ceil(log2 M)
  unsigned codes_per_word = 0;     // floor(64 / bits_per_code)
  std::size_t words_per_row = 0;   // ceil(L / codes_per_word)

  static CodeLayout make(std::size_t code_length, std::size_t subsample);

  /// Bits actually carrying codes, L * bits_per_code.
  std::size_t payload_bits() const noexcept { return code_length * bits_per_code; }
  std::size_t payload_bytes() const noexcept { return (payload_bits() + 7) / 8; }
  /// Bytes one packed row occupies in memory and on disk.
  std::size_t row_bytes() const noexcept { return words_per_row * sizeof(std::uint64_t); }

  friend bool operator==(const CodeLayout&, const CodeLayout&) = default;
};

/// ceil(log2 m) for m >= 2.
unsigned bits_for_subsample(std::size_t subsample);

/// Packs one row of L codes. Throws InvalidArgument when a code is >= M or the
/// row length differs from L.
std::vector<std::uint64_t> pack(std::span<const WtaCode> codes, const CodeLayout& layout);
void pack_into(std::span<const WtaCode> codes, const CodeLayout& layout,
               std::span<std::uint64_t> out);

/// Inverse of pack().
std::vector<WtaCode> unpack(std::span<const std::uint64_t> words, const CodeLayout& layout);

/// Number of positions at which two packed rows hold equal codes. XORs each
/// word pair, folds every code field onto its lowest bit, masks those bits and
/// popcounts the mismatches.
std::size_t matching_codes(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                           const CodeLayout& layout) noexcept;

/// matching_codes() with the field masks of one layout computed once, for
/// scans that compare many rows.
class CodeMatcher {
 public:
  explicit CodeMatcher(const CodeLayout& layout) noexcept;

  /// Both pointers address words_per_row words.
  std::size_t operator()(const std::uint64_t* a, const std::uint64_t* b) const noexcept;

 private:
  std::size_t code_length_;
  std::size_t words_;
  unsigned bits_;
  std::uint64_t full_mask_;
  std::uint64_t tail_mask_;
};

/// N packed code rows sharing one layout.
class HashCodes {
 public:
  HashCodes() = default;
  HashCodes(std::size_t rows, const CodeLayout& layout);

  std::size_t rows() const noexcept { return rows_; }
  const CodeLayout& layout() const noexcept { return layout_; }
  std::size_t code_length() const noexcept { return layout_.code_length; }
  std::size_t subsample() const noexcept { return layout_.subsample; }

  std::span<std::uint64_t> row(std::size_t n) {
    return {words_.data() + n * layout_.words_per_row, layout_.words_per_row};
  }
  std::span<const std::uint64_t> row(std::size_t n) const {
    return {words_.data() + n * layout_.words_per_row, layout_.words_per_row};
  }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  /// Unpacked codes of row n.
  std::vector<WtaCode> codes(std::size_t n) const { return unpack(row(n), layout_); }

  friend bool operator==(const HashCodes&, const HashCodes&) = default;

 private:
  std::size_t rows_ = 0;
  CodeLayout layout_;
  std::vector<std::uint64_t> words_;
};

/// Hashes every row of `features` and packs it.
HashCodes hash_matrix(const FeatureMatrix& features, const PermutationTable& table);

/// Hashes and packs a single vector.
std::vector<std::uint64_t> hash_packed(std::span<const float> x, const PermutationTable& table);

/// Fraction of equal codes between row i of `a` and row j of `b`. Throws
/// InvalidArgument when L or M differ.
double hamming_similarity(const HashCodes& a, std::size_t i, const HashCodes& b, std::size_t j);
double hamming_similarity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                          const CodeLayout& layout);

}  // namespace wtasep
