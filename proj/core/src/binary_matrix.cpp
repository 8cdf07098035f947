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

#include "wtasep/binary_matrix.hpp"

#include "wtasep/error.hpp"

namespace wtasep {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), words_(rows * words_per_row_, 0) {}

void BinaryMatrix::set(std::size_t r, std::size_t c, bool value) {
  std::uint64_t& word = words_[r * words_per_row_ + c / 64];
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  word = value ? (word | bit) : (word & ~bit);
}

void BinaryMatrix::append(const BinaryMatrix& other) {
  if (rows_ == 0 && cols_ == 0) {
    *this = other;
    return;
  }
  if (other.cols_ != cols_) throw InvalidArgument("cannot append mask rows with a different column count");
  words_.insert(words_.end(), other.words_.begin(), other.words_.end());
  rows_ += other.rows_;
}

}  // namespace wtasep
