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

#ifndef NOISEBENCH_WAV_H_
#define NOISEBENCH_WAV_H_

#include <filesystem>
#include <string_view>

#include "noisebench/audio.h"

namespace noisebench {

enum class WavEncoding { kPcm16, kFloat32 };

WavEncoding parse_wav_encoding(std::string_view name);

// Reads a RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float samples
// (plain or WAVE_FORMAT_EXTENSIBLE). PCM maps to x / 32768. Multichannel
// frames are averaged to mono.
//
// Throws FormatError (naming the chunk) for a malformed container,
// UnsupportedCodecError for any other encoding and IoError if the file
// cannot be opened.
AudioBuffer read_wav(const std::filesystem::path& path);

// Writes a mono file. float32 output reproduces every sample that is exactly
// representable as a float; pcm16 rounds to the nearest step and saturates at
// [-32768, 32767]. Throws DomainError on non-finite samples and IoError if
// the path is not writable.
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path,
               WavEncoding encoding = WavEncoding::kFloat32);

}  // namespace noisebench

#endif  // NOISEBENCH_WAV_H_
