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
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "wtasep/dictionary.hpp"
#include "wtasep/error.hpp"

namespace wtasep {

// On-disk layout (all integers little-endian):
//
//   magic "WTASEP01" | u32 format_version | u32 section_count | section...
//   section := u32 tag | u64 payload_bytes | payload | u32 crc32(payload)
//
// Sections, in order: "META", "FEAT" (f32 features), "IBMK" (packed IBM
// words) and, when codes are present, "CODE" (header with L, M, D, seed,
// bits-per-code and word layout version, then packed code words).

inline constexpr std::string_view kDictionaryMagic = "WTASEP01";
inline constexpr std::uint32_t kDictionaryFormatVersion = 1;
inline constexpr std::uint32_t kCodeWordLayoutVersion = 1;

enum class FormatErrorKind {
  kBadMagic,
  kUnsupportedVersion,
  kTruncated,
  kChecksumMismatch,
  kMalformed,
};

std::string_view to_string(FormatErrorKind kind) noexcept;

class DictionaryFormatError : public Error {
 public:
  DictionaryFormatError(FormatErrorKind kind, const std::string& detail);
  FormatErrorKind kind() const noexcept { return kind_; }

 private:
  FormatErrorKind kind_;
};

std::vector<std::byte> serialize(const SeparationDictionary& dict);
/// Parses a complete image. Never returns a partially filled dictionary.
SeparationDictionary deserialize(std::span<const std::byte> bytes);

void save(const SeparationDictionary& dict, const std::filesystem::path& path);
SeparationDictionary load(const std::filesystem::path& path);

}  // namespace wtasep
