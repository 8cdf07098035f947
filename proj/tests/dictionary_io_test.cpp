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

#include <gtest/gtest.h>

#include <filesystem>

#include "wtasep/dictionary_io.hpp"
#include "wtasep/synth.hpp"

namespace wtasep {
namespace {

SeparationDictionary sample_dictionary(bool with_codes) {
  auto dict = build_dictionary({{synth::harmonic_speech(1, 6000), synth::modulated_noise(2, 6000), 0.0}},
                               FrontendConfig{});
  if (with_codes) attach_codes(dict, HashParams{100, 6, 99});
  return dict;
}

FormatErrorKind error_kind(std::span<const std::byte> bytes) {
  try {
    deserialize(bytes);
  } catch (const DictionaryFormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a format error";
  return FormatErrorKind::kMalformed;
}

TEST(DictionaryIo, RoundTripIsBitIdentical) {
  for (bool with_codes : {false, true}) {
    const auto dict = sample_dictionary(with_codes);
    const auto path = std::filesystem::temp_directory_path() / "wtasep_dict_roundtrip.bin";
    save(dict, path);
    const auto back = load(path);
    EXPECT_EQ(back, dict);
    EXPECT_EQ(serialize(back), serialize(dict));
    std::filesystem::remove(path);
  }
}

TEST(DictionaryIo, HeaderStartsWithMagicAndVersion) {
  const auto bytes = serialize(sample_dictionary(true));
  ASSERT_GE(bytes.size(), 16U);
  EXPECT_EQ(std::string(reinterpret_cast<const char*>(bytes.data()), 8), "WTASEP01");
  EXPECT_EQ(static_cast<int>(bytes[8]), 1);
  EXPECT_EQ(static_cast<int>(bytes[12]), 4);
}

TEST(DictionaryIo, CorruptedMagic) {
  auto bytes = serialize(sample_dictionary(false));
  bytes[3] = std::byte{'X'};
  EXPECT_EQ(error_kind(bytes), FormatErrorKind::kBadMagic);
}

TEST(DictionaryIo, UnsupportedVersion) {
  auto bytes = serialize(sample_dictionary(false));
  bytes[8] = std::byte{2};
  EXPECT_EQ(error_kind(bytes), FormatErrorKind::kUnsupportedVersion);
}

TEST(DictionaryIo, EveryTruncationIsReportedAsTruncated) {
  const auto bytes = serialize(sample_dictionary(true));
  for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
    ASSERT_EQ(error_kind(std::span(bytes).first(cut)), FormatErrorKind::kTruncated) << "cut at " << cut;
  }
}

TEST(DictionaryIo, FlippedPayloadByteFailsChecksum) {
  const auto clean = serialize(sample_dictionary(true));
  // Offsets inside META, FEAT, IBMK and CODE payloads respectively.
  const std::size_t meta_payload = 16 + 12;
  for (std::size_t offset : {meta_payload + 2, clean.size() / 3, clean.size() * 2 / 3, clean.size() - 10}) {
    auto bytes = clean;
    bytes[offset] ^= std::byte{0x40};
    EXPECT_EQ(error_kind(bytes), FormatErrorKind::kChecksumMismatch) << offset;
  }
}

TEST(DictionaryIo, UnexpectedSectionTagIsMalformed) {
  auto bytes = serialize(sample_dictionary(false));
  bytes[16] = std::byte{'X'};  // first section tag
  EXPECT_EQ(error_kind(bytes), FormatErrorKind::kMalformed);
  auto extended = serialize(sample_dictionary(false));
  extended.push_back(std::byte{0});
  EXPECT_EQ(error_kind(extended), FormatErrorKind::kMalformed);
}

TEST(DictionaryIo, MissingFileIsAnIoError) {
  EXPECT_THROW(load("/nonexistent/wtasep.dict"), IoError);
}

}  // namespace
}  // namespace wtasep
