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

#include "wtasep/dictionary_io.hpp"

#include <zlib.h>

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace wtasep {
namespace {

constexpr std::uint32_t make_tag(const char (&name)[5]) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(name[0])) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(name[1])) << 8) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(name[2])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(name[3])) << 24);
}

constexpr std::uint32_t kTagMeta = make_tag("META");
constexpr std::uint32_t kTagFeatures = make_tag("FEAT");
constexpr std::uint32_t kTagIbm = make_tag("IBMK");
constexpr std::uint32_t kTagCodes = make_tag("CODE");

std::string tag_name(std::uint32_t tag) {
  std::string name(4, '?');
  for (int i = 0; i < 4; ++i) {
    const auto c = static_cast<char>((tag >> (8 * i)) & 0xFF);
    name[static_cast<std::size_t>(i)] = (c >= 32 && c < 127) ? c : '?';
  }
  return name;
}

std::uint32_t crc32_of(std::span<const std::byte> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large payloads in chunks.
  constexpr std::size_t kChunk = 1U << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t len = std::min(kChunk, bytes.size() - off);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + off), static_cast<uInt>(len));
  }
  return static_cast<std::uint32_t>(crc);
}

class Writer {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(static_cast<std::byte>(v)); }
  void u32(std::uint32_t v) { little(v, 4); }
  void u64(std::uint64_t v) { little(v, 8); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(std::span<const std::byte> b) { bytes_.insert(bytes_.end(), b.begin(), b.end()); }

  std::vector<std::byte>& bytes() { return bytes_; }

 private:
  void little(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
  }
  std::vector<std::byte> bytes_;
};

// Cursor over a byte span; running past the end raises `short_kind`.
class Reader {
 public:
  Reader(std::span<const std::byte> bytes, FormatErrorKind short_kind, std::string what)
      : bytes_(bytes), short_kind_(short_kind), what_(std::move(what)) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(little(4)); }
  std::uint64_t u64() { return little(8); }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }

  std::span<const std::byte> take(std::size_t n) {
    if (n > remaining()) {
      throw DictionaryFormatError(short_kind_, what_ + ": need " + std::to_string(n) + " bytes at offset " +
                                                   std::to_string(pos_) + ", " + std::to_string(remaining()) +
                                                   " left");
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  std::size_t position() const noexcept { return pos_; }

 private:
  std::uint64_t little(int n) {
    const auto b = take(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
    return v;
  }

  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
  FormatErrorKind short_kind_;
  std::string what_;
};

[[noreturn]] void malformed(const std::string& detail) {
  throw DictionaryFormatError(FormatErrorKind::kMalformed, detail);
}

std::size_t checked_product(std::uint64_t a, std::uint64_t b, std::size_t elem, std::size_t limit) {
  if (a != 0 && (b > limit / a || a * b > limit / elem)) malformed("section dimensions overflow the payload");
  return static_cast<std::size_t>(a * b * elem);
}

void write_section(Writer& out, std::uint32_t tag, Writer&& payload) {
  out.u32(tag);
  out.u64(payload.bytes().size());
  out.raw(payload.bytes());
  out.u32(crc32_of(payload.bytes()));
}

Writer meta_payload(const DictionaryMeta& meta) {
  Writer w;
  w.u32(static_cast<std::uint32_t>(meta.sample_rate));
  w.u64(meta.frontend.stft.window_len);
  w.u64(meta.frontend.stft.hop);
  w.u8(static_cast<std::uint8_t>(meta.frontend.stft.window));
  w.u8(static_cast<std::uint8_t>(meta.frontend.kind));
  w.u64(meta.frontend.mel.bands);
  w.f64(meta.frontend.mel.f_min);
  w.f64(meta.frontend.mel.f_max);
  w.u8(meta.hash ? 1 : 0);
  if (meta.hash) {
    w.u64(meta.hash->code_length);
    w.u64(meta.hash->subsample);
    w.u64(meta.hash->seed);
  }
  return w;
}

DictionaryMeta parse_meta(std::span<const std::byte> payload) {
  Reader r(payload, FormatErrorKind::kMalformed, "META section");
  DictionaryMeta meta;
  meta.sample_rate = static_cast<int>(r.u32());
  meta.frontend.stft.window_len = r.u64();
  meta.frontend.stft.hop = r.u64();
  const auto window = r.u8();
  if (window != static_cast<std::uint8_t>(WindowKind::kHann)) malformed("unknown window kind");
  const auto kind = r.u8();
  if (kind > static_cast<std::uint8_t>(FeatureKind::kMel)) malformed("unknown feature kind");
  meta.frontend.kind = static_cast<FeatureKind>(kind);
  meta.frontend.mel.bands = r.u64();
  meta.frontend.mel.f_min = r.f64();
  meta.frontend.mel.f_max = r.f64();
  const auto has_hash = r.u8();
  if (has_hash > 1) malformed("bad hash flag");
  if (has_hash == 1) {
    HashParams hash;
    hash.code_length = r.u64();
    hash.subsample = r.u64();
    hash.seed = r.u64();
    meta.hash = hash;
  }
  if (r.remaining() != 0) malformed("trailing bytes in META section");
  return meta;
}

}  // namespace

std::string_view to_string(FormatErrorKind kind) noexcept {
  switch (kind) {
    case FormatErrorKind::kBadMagic: return "bad magic";
    case FormatErrorKind::kUnsupportedVersion: return "unsupported version";
    case FormatErrorKind::kTruncated: return "truncated section";
    case FormatErrorKind::kChecksumMismatch: return "checksum mismatch";
    case FormatErrorKind::kMalformed: return "malformed";
  }
  return "unknown";
}

DictionaryFormatError::DictionaryFormatError(FormatErrorKind kind, const std::string& detail)
    : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

std::vector<std::byte> serialize(const SeparationDictionary& dict) {
  validate(dict);
  Writer out;
  out.raw(std::as_bytes(std::span(kDictionaryMagic.data(), kDictionaryMagic.size())));
  out.u32(kDictionaryFormatVersion);
  out.u32(dict.codes ? 4 : 3);

  write_section(out, kTagMeta, meta_payload(dict.meta));

  Writer feat;
  feat.u64(dict.features.rows());
  feat.u64(dict.features.dim());
  for (float v : dict.features.data()) feat.f32(v);
  write_section(out, kTagFeatures, std::move(feat));

  Writer ibm;
  ibm.u64(dict.ibm.rows());
  ibm.u64(dict.ibm.cols());
  ibm.u64(dict.ibm.words_per_row());
  for (auto w : dict.ibm.words()) ibm.u64(w);
  write_section(out, kTagIbm, std::move(ibm));

  if (dict.codes) {
    const CodeLayout& layout = dict.codes->layout();
    Writer codes;
    codes.u64(dict.codes->rows());
    codes.u32(static_cast<std::uint32_t>(layout.code_length));
    codes.u32(static_cast<std::uint32_t>(layout.subsample));
    codes.u32(static_cast<std::uint32_t>(dict.features.dim()));
    codes.u64(dict.meta.hash->seed);
    codes.u32(layout.bits_per_code);
    codes.u32(kCodeWordLayoutVersion);
    codes.u64(layout.words_per_row);
    for (auto w : dict.codes->words()) codes.u64(w);
    write_section(out, kTagCodes, std::move(codes));
  }
  return std::move(out.bytes());
}

SeparationDictionary deserialize(std::span<const std::byte> bytes) {
  Reader file(bytes, FormatErrorKind::kTruncated, "dictionary file");
  const auto magic = file.take(kDictionaryMagic.size());
  if (std::memcmp(magic.data(), kDictionaryMagic.data(), kDictionaryMagic.size()) != 0) {
    throw DictionaryFormatError(FormatErrorKind::kBadMagic, "expected " + std::string(kDictionaryMagic));
  }
  const std::uint32_t version = file.u32();
  if (version != kDictionaryFormatVersion) {
    throw DictionaryFormatError(FormatErrorKind::kUnsupportedVersion,
                                "file version " + std::to_string(version) + ", reader supports " +
                                    std::to_string(kDictionaryFormatVersion));
  }
  const std::uint32_t section_count = file.u32();
  if (section_count < 3 || section_count > 4) malformed("unexpected section count " + std::to_string(section_count));

  std::array<std::uint32_t, 4> expected_tags = {kTagMeta, kTagFeatures, kTagIbm, kTagCodes};
  std::array<std::span<const std::byte>, 4> payloads;
  for (std::uint32_t s = 0; s < section_count; ++s) {
    const std::uint32_t tag = file.u32();
    const std::uint64_t length = file.u64();
    if (tag != expected_tags[s]) {
      malformed("section " + std::to_string(s) + " is '" + tag_name(tag) + "', expected '" +
                tag_name(expected_tags[s]) + "'");
    }
    if (length > file.remaining()) {
      throw DictionaryFormatError(FormatErrorKind::kTruncated, "section '" + tag_name(tag) + "' declares " +
                                                                   std::to_string(length) + " bytes, " +
                                                                   std::to_string(file.remaining()) + " remain");
    }
    payloads[s] = file.take(static_cast<std::size_t>(length));
    const std::uint32_t stored_crc = file.u32();
    if (stored_crc != crc32_of(payloads[s])) {
      throw DictionaryFormatError(FormatErrorKind::kChecksumMismatch, "section '" + tag_name(tag) + "'");
    }
  }
  if (file.remaining() != 0) malformed("trailing bytes after the last section");

  SeparationDictionary dict;
  dict.meta = parse_meta(payloads[0]);

  {
    Reader r(payloads[1], FormatErrorKind::kMalformed, "FEAT section");
    const std::uint64_t rows = r.u64();
    const std::uint64_t dim = r.u64();
    const std::size_t need = checked_product(rows, dim, sizeof(float), r.remaining());
    if (need != r.remaining()) malformed("FEAT payload size does not match its dimensions");
    FeatureMatrix features(static_cast<std::size_t>(rows), static_cast<std::size_t>(dim), dict.meta.frontend.kind);
    for (float& v : features.data()) v = r.f32();
    dict.features = std::move(features);
  }
  {
    Reader r(payloads[2], FormatErrorKind::kMalformed, "IBMK section");
    const std::uint64_t rows = r.u64();
    const std::uint64_t cols = r.u64();
    const std::uint64_t words_per_row = r.u64();
    if (words_per_row != (cols + 63) / 64) malformed("IBM word count does not match its width");
    const std::size_t need = checked_product(rows, words_per_row, sizeof(std::uint64_t), r.remaining());
    if (need != r.remaining()) malformed("IBMK payload size does not match its dimensions");
    BinaryMatrix ibm(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (auto& w : ibm.words()) w = r.u64();
    dict.ibm = std::move(ibm);
  }
  if (section_count == 4) {
    Reader r(payloads[3], FormatErrorKind::kMalformed, "CODE section");
    const std::uint64_t rows = r.u64();
    const std::uint32_t code_length = r.u32();
    const std::uint32_t subsample = r.u32();
    const std::uint32_t dim = r.u32();
    const std::uint64_t seed = r.u64();
    const std::uint32_t bits = r.u32();
    const std::uint32_t layout_version = r.u32();
    const std::uint64_t words_per_row = r.u64();
    if (layout_version != kCodeWordLayoutVersion) {
      throw DictionaryFormatError(FormatErrorKind::kUnsupportedVersion,
                                  "code word layout version " + std::to_string(layout_version));
    }
    if (!dict.meta.hash || dict.meta.hash->code_length != code_length || dict.meta.hash->subsample != subsample ||
        dict.meta.hash->seed != seed || dim != dict.features.dim()) {
      malformed("CODE header disagrees with META");
    }
    CodeLayout layout;
    try {
      layout = CodeLayout::make(code_length, subsample);
    } catch (const InvalidArgument& e) {
      malformed(e.what());
    }
    if (layout.bits_per_code != bits || layout.words_per_row != words_per_row) {
      malformed("CODE layout fields are inconsistent");
    }
    const std::size_t need = checked_product(rows, words_per_row, sizeof(std::uint64_t), r.remaining());
    if (need != r.remaining()) malformed("CODE payload size does not match its dimensions");
    HashCodes codes(static_cast<std::size_t>(rows), layout);
    for (auto& w : codes.words()) w = r.u64();
    dict.codes = std::move(codes);
  } else if (dict.meta.hash) {
    malformed("META declares hash codes but no CODE section exists");
  }

  try {
    validate(dict);
  } catch (const InvalidArgument& e) {
    malformed(e.what());
  }
  return dict;
}

void save(const SeparationDictionary& dict, const std::filesystem::path& path) {
  const auto bytes = serialize(dict);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

SeparationDictionary load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(std::as_bytes(std::span(raw)));
}

}  // namespace wtasep
