// Copyright 2026 The hf0 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "hf0/audio.hpp"
#include "hf0/error.hpp"

namespace hf0 {
namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <typename T>
T read_le(const std::uint8_t* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

std::string hex16(std::uint16_t v) {
  std::ostringstream s;
  s << "0x" << std::hex << v;
  return s.str();
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

FmtChunk parse_fmt(const std::uint8_t* p, std::uint32_t size) {
  if (size < 16) throw FormatError("fmt chunk too short (" + std::to_string(size) + " bytes)");
  FmtChunk f;
  f.format = read_le<std::uint16_t>(p);
  f.channels = read_le<std::uint16_t>(p + 2);
  f.sample_rate = read_le<std::uint32_t>(p + 4);
  f.block_align = read_le<std::uint16_t>(p + 12);
  f.bits = read_le<std::uint16_t>(p + 14);
  if (f.format == kFormatExtensible) {
    if (size < 40) throw FormatError("WAVE_FORMAT_EXTENSIBLE fmt chunk too short");
    // The first two bytes of the sub-format GUID carry the real format tag.
    f.format = read_le<std::uint16_t>(p + 24);
  }
  return f;
}

}  // namespace

AudioBuffer load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("'" + path.string() + "' is not a RIFF/WAVE file");
  }

  FmtChunk fmt;
  bool have_fmt = false;
  const std::uint8_t* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* hdr = bytes.data() + pos;
    std::uint32_t size = read_le<std::uint32_t>(hdr + 4);
    const std::size_t body = pos + 8;
    const std::size_t avail = bytes.size() - body;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size > avail) throw FormatError("truncated fmt chunk");
      fmt = parse_fmt(bytes.data() + body, size);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      // Some writers leave the data size unset when streaming; clamp.
      data = bytes.data() + body;
      data_size = static_cast<std::uint32_t>(std::min<std::size_t>(size, avail));
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw FormatError("missing fmt chunk");
  if (data == nullptr) throw FormatError("missing data chunk");

  if (fmt.format != kFormatPcm && fmt.format != kFormatFloat) {
    throw FormatError("unsupported format: audio_format=" + hex16(fmt.format) +
                      " (only PCM and IEEE float are supported)");
  }
  if (fmt.format == kFormatPcm && fmt.bits != 16) {
    throw FormatError("unsupported format: bits_per_sample=" + std::to_string(fmt.bits) +
                      " for PCM (expected 16)");
  }
  if (fmt.format == kFormatFloat && fmt.bits != 32) {
    throw FormatError("unsupported format: bits_per_sample=" + std::to_string(fmt.bits) +
                      " for IEEE float (expected 32)");
  }
  if (fmt.channels != 1 && fmt.channels != 2) {
    throw FormatError("unsupported format: num_channels=" + std::to_string(fmt.channels));
  }
  if (fmt.sample_rate == 0) throw FormatError("unsupported format: sample_rate=0");

  const std::size_t bytes_per_sample = fmt.bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
  const std::size_t frames = data_size / frame_bytes;
  std::vector<double> samples(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < fmt.channels; ++c) {
      const std::uint8_t* p = data + i * frame_bytes + c * bytes_per_sample;
      if (fmt.format == kFormatPcm) {
        acc += read_le<std::int16_t>(p) / 32768.0;
      } else {
        acc += static_cast<double>(read_le<float>(p));
      }
    }
    samples[i] = acc / fmt.channels;
  }
  return AudioBuffer(std::move(samples), static_cast<int>(fmt.sample_rate));
}

namespace {

void put16(std::ostream& out, std::uint16_t v) { out.write(reinterpret_cast<const char*>(&v), 2); }
void put32(std::ostream& out, std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); }

}  // namespace

void write_wav(const AudioBuffer& buf, const std::filesystem::path& path,
               WavEncoding encoding) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");

  const bool is_float = encoding == WavEncoding::kFloat32;
  const std::uint16_t bits = is_float ? 32 : 16;
  const std::uint16_t block_align = bits / 8;
  const auto data_bytes = static_cast<std::uint32_t>(buf.size() * block_align);
  const auto rate = static_cast<std::uint32_t>(buf.sample_rate());

  out.write("RIFF", 4);
  put32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put32(out, 16);
  put16(out, is_float ? kFormatFloat : kFormatPcm);
  put16(out, 1);
  put32(out, rate);
  put32(out, rate * block_align);
  put16(out, block_align);
  put16(out, bits);
  out.write("data", 4);
  put32(out, data_bytes);
  for (double v : buf.samples()) {
    if (is_float) {
      float f = static_cast<float>(v);
      out.write(reinterpret_cast<const char*>(&f), 4);
    } else {
      double scaled = std::round(v * 32768.0);
      scaled = std::clamp(scaled, -32768.0, 32767.0);
      put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    }
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace hf0
