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

#ifndef NOISEBENCH_SYNTHETIC_H_
#define NOISEBENCH_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "noisebench/audio.h"
#include "noisebench/notes.h"

namespace noisebench {

// Seeded random piano-range melody: consecutive notes 0.15-0.4 s apart,
// pitches 48-84.
NoteList synthetic_notes(double duration_s, std::uint64_t seed);

// Decaying sine partials for every note, peak-normalized to 0.8.
AudioBuffer render_notes(const NoteList& notes, double duration_s, std::uint32_t sample_rate);

// Writes `count` recordings (syn00.wav + syn00.mid, ...) and a manifest.csv
// marking all of them as test split. Returns the manifest path.
std::filesystem::path make_synthetic_corpus(const std::filesystem::path& dir, std::size_t count,
                                            std::uint64_t seed, double duration_s = 4.0,
                                            std::uint32_t sample_rate = 16000);

}  // namespace noisebench

#endif  // NOISEBENCH_SYNTHETIC_H_
