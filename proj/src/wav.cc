// Copyright 2026 The noisebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noisebench/wav.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "noisebench/error.h"

namespace noisebench {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

// RIFF sizes are 32-bit, so nothing larger can be a well-formed file.
constexpr std::uintmax_t kMaxFileBytes = 0xFFFFFFFFull + 8;

std::uint16_t load_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t load_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void store_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
  }
}

void store_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
  out.insert(out.end(), tag, tag + 4);
}

std::string chunk_name(const std::uint8_t* p) {
  std::string name(reinterpret_cast<const char*>(p), 4);
  for (char& c : name) {
    if (c < 0x20 || c > 0x7E) c = '?';
  }
  return name;
}

struct FmtChunk {
  std::uint16_t format_tag;
  std::uint16_t channels;
  std::uint32_t sample_rate;
  std::uint16_t block_align;
  std::uint16_t bits_per_sample;
};

FmtChunk parse_fmt(const std::uint8_t* p, std::uint32_t size) {
  if (size < 16) {
    throw FormatError("fmt chunk: expected at least 16 bytes, found " +
                      std::to_string(size));
  }
  FmtChunk fmt{load_u16(p), load_u16(p + 2), load_u32(p + 4), load_u16(p + 12),
               load_u16(p + 14)};
  if (fmt.format_tag == kFormatExtensible) {
    if (size < 40) {
      throw FormatError("fmt chunk: WAVE_FORMAT_EXTENSIBLE needs 40 bytes");
    }
    // The first two bytes of the sub-format GUID hold the real format tag.
    fmt.format_tag = load_u16(p + 24);
  }
  if (fmt.channels == 0) throw FormatError("fmt chunk: zero channels");
  if (fmt.sample_rate == 0) throw FormatError("fmt chunk: zero sample rate");
  const bool pcm16 = fmt.format_tag == kFormatPcm && fmt.bits_per_sample == 16;
  const bool float32 =
      fmt.format_tag == kFormatFloat && fmt.bits_per_sample == 32;
  if (!pcm16 && !float32) {
    throw UnsupportedCodecError(
        "unsupported WAV encoding: format tag " +
        std::to_string(fmt.format_tag) + " with " +
        std::to_string(fmt.bits_per_sample) +
        " bits per sample (only 16-bit PCM and 32-bit float are supported)");
  }
  if (fmt.block_align != fmt.channels * (fmt.bits_per_sample / 8)) {
    throw FormatError("fmt chunk: block align " +
                      std::to_string(fmt.block_align) +
                      " does not match channel count and sample width");
  }
  return fmt;
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot open " + path.string() + ": " + ec.message());
  if (size > kMaxFileBytes) {
    throw IoError(path.string() + ": file of " + std::to_string(size) +
                  " bytes exceeds the maximum WAV size");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes;
  try {
    bytes.resize(static_cast<std::size_t>(size));
  } catch (const std::bad_alloc&) {
    throw IoError(path.string() + ": file of " + std::to_string(size) +
                  " bytes does not fit in memory");
  }
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw IoError("short read on " + path.string());
  }
  return bytes;
}

}  // namespace

WavEncoding parse_wav_encoding(std::string_view name) {
  if (name == "pcm16") return WavEncoding::kPcm16;
  if (name == "float32") return WavEncoding::kFloat32;
  throw DomainError("unknown WAV encoding '" + std::string(name) +
                    "' (expected pcm16 or float32)");
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = slurp(path);
  const std::uint8_t* base = bytes.data();
  const std::size_t n = bytes.size();

  if (n < 12 || std::memcmp(base, "RIFF", 4) != 0) {
    throw FormatError("RIFF header: missing 'RIFF' signature");
  }
  if (std::memcmp(base + 8, "WAVE", 4) != 0) {
    throw FormatError("RIFF header: form type is not 'WAVE'");
  }

  std::optional<FmtChunk> fmt;
  const std::uint8_t* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos < n) {
    if (n - pos < 8) {
      throw FormatError("chunk header at byte " + std::to_string(pos) +
                        ": truncated");
    }
    const std::string id = chunk_name(base + pos);
    const std::uint32_t size = load_u32(base + pos + 4);
    const std::size_t body = pos + 8;
    if (size > n - body) {
      throw FormatError(id + " chunk: declares " + std::to_string(size) +
                        " bytes but only " + std::to_string(n - body) +
                        " remain");
    }
    if (id == "fmt ") {
      fmt = parse_fmt(base + body, size);
    } else if (id == "data") {
      data = base + body;
      data_size = size;
    }
    pos = body + size + (size & 1u);
  }

  if (!fmt) throw FormatError("fmt chunk: missing");
  if (data == nullptr) throw FormatError("data chunk: missing");
  if (data_size % fmt->block_align != 0) {
    throw FormatError("data chunk: size " + std::to_string(data_size) +
                      " is not a whole number of frames");
  }

  const std::size_t channels = fmt->channels;
  const std::size_t frames = data_size / fmt->block_align;
  const bool is_float = fmt->format_tag == kFormatFloat;
  std::vector<double> mono(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::uint8_t* frame = data + f * fmt->block_align;
    double sum = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      if (is_float) {
        sum += static_cast<double>(std::bit_cast<float>(load_u32(frame + 4 * c)));
      } else {
        const auto v = static_cast<std::int16_t>(load_u16(frame + 2 * c));
        sum += static_cast<double>(v) / 32768.0;
      }
    }
    mono[f] = channels == 1 ? sum : sum / static_cast<double>(channels);
  }
  return AudioBuffer(std::move(mono), fmt->sample_rate);
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path,
               WavEncoding encoding) {
  for (double x : buffer.samples()) {
    if (!std::isfinite(x)) throw DomainError("cannot write non-finite sample");
  }
  const bool is_float = encoding == WavEncoding::kFloat32;
  const std::uint16_t bytes_per_sample = is_float ? 4 : 2;
  const std::uint64_t data_bytes =
      static_cast<std::uint64_t>(buffer.size()) * bytes_per_sample;
  // fmt(8 + 16|18) + optional fact(12) + data header(8)
  const std::uint64_t header_bytes = is_float ? 4 + 26 + 12 + 8 : 4 + 24 + 8;
  if (data_bytes + header_bytes > 0xFFFFFFFFull) {
    throw DomainError("buffer too long for a RIFF/WAVE file");
  }

  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(8 + header_bytes + data_bytes));
  store_tag(out, "RIFF");
  store_u32(out, static_cast<std::uint32_t>(header_bytes + data_bytes));
  store_tag(out, "WAVE");

  store_tag(out, "fmt ");
  store_u32(out, is_float ? 18 : 16);
  store_u16(out, is_float ? kFormatFloat : kFormatPcm);
  store_u16(out, 1);
  store_u32(out, buffer.sample_rate());
  store_u32(out, buffer.sample_rate() * bytes_per_sample);
  store_u16(out, bytes_per_sample);
  store_u16(out, static_cast<std::uint16_t>(bytes_per_sample * 8));
  if (is_float) {
    store_u16(out, 0);  // cbSize
    store_tag(out, "fact");
    store_u32(out, 4);
    store_u32(out, static_cast<std::uint32_t>(buffer.size()));
  }

  store_tag(out, "data");
  store_u32(out, static_cast<std::uint32_t>(data_bytes));
  for (double x : buffer.samples()) {
    if (is_float) {
      store_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
    } else {
      const double q = std::clamp(std::nearbyint(x * 32768.0), -32768.0, 32767.0);
      store_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  file.close();
  if (!file) throw IoError("failed writing " + path.string());
}

}  // namespace noisebench
