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

#include "wtasep/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "wtasep/error.hpp"

namespace wtasep {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string where = " in " + path.string();

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw InvalidArgument("not a RIFF/WAVE file" + where);
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > available) throw InvalidArgument("malformed fmt chunk" + where);
      format = read_u16(chunk + 8);
      channels = read_u16(chunk + 10);
      rate = read_u32(chunk + 12);
      bits = read_u16(chunk + 22);
      if (format == kFormatExtensible) {
        if (size < 40) throw InvalidArgument("malformed extensible fmt chunk" + where);
        format = read_u16(chunk + 8 + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = std::min<std::size_t>(size, available);
      break;
    }
    pos = body + size + (size & 1U);
  }

  if (!have_fmt) throw InvalidArgument("missing fmt chunk" + where);
  if (data == nullptr) throw InvalidArgument("missing data chunk" + where);
  if (channels != 1) {
    throw InvalidArgument("only mono audio is supported, got " + std::to_string(channels) + " channels" + where);
  }
  if (rate == 0) throw InvalidArgument("zero sample rate" + where);

  AudioBuffer audio;
  audio.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    audio.samples.resize(data_size / 2);
    for (std::size_t i = 0; i < audio.samples.size(); ++i) {
      const auto v = static_cast<std::int16_t>(read_u16(data + 2 * i));
      audio.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    audio.samples.resize(data_size / 4);
    for (std::size_t i = 0; i < audio.samples.size(); ++i) {
      audio.samples[i] = static_cast<double>(std::bit_cast<float>(read_u32(data + 4 * i)));
    }
  } else {
    throw InvalidArgument("unsupported WAV encoding (format " + std::to_string(format) + ", " +
                          std::to_string(bits) + " bits)" + where);
  }
  validate(audio);
  return audio;
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio, WavSampleFormat format) {
  validate(audio);
  const bool pcm = format == WavSampleFormat::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(audio.samples.size() * (bits / 8));

  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, pcm ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(audio.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(audio.sample_rate) * (bits / 8));
  put_u16(out, static_cast<std::uint16_t>(bits / 8));
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double v : audio.samples) {
    if (pcm) {
      const double clipped = std::clamp(v, -1.0, 1.0);
      const auto q = static_cast<std::int16_t>(std::clamp(std::lround(clipped * 32767.0), -32768L, 32767L));
      put_u16(out, static_cast<std::uint16_t>(q));
    } else {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("write failed for " + path.string());
}

}  // namespace wtasep
