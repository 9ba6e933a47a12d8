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

#ifndef NOISEBENCH_TRANSCRIBER_H_
#define NOISEBENCH_TRANSCRIBER_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "noisebench/notes.h"

namespace noisebench {

enum class NoteFormat { kMidi, kTsv };

// An external transcription command. `command_template` is run through
// /bin/sh after `{input}` and `{output}` are replaced by shell-quoted paths;
// each placeholder must appear exactly once.
struct TranscriberSpec {
  std::string system_id;
  std::string command_template;
  NoteFormat output_format = NoteFormat::kTsv;
  double timeout_s = 600.0;

  // Throws DomainError when the invariants above do not hold.
  void validate() const;
};

// Synthetic transcriber: drops each reference note with probability
// p0 + (1 - p0) * sigmoid(-k * (snr - snr0)) and jitters the survivors'
// onsets uniformly within +/- jitter_s. The defaults give a knee around
// 9-12 dB; they are test fixture constants.
struct MockParams {
  double p0 = 0.02;
  double k = 0.4;
  double snr0 = 6.0;
  double jitter_s = 0.01;

  void validate() const;
  friend bool operator==(const MockParams&, const MockParams&) = default;
};

struct MockSpec {
  std::string system_id;
  MockParams params;
};

using SystemSpec = std::variant<TranscriberSpec, MockSpec>;

const std::string& system_id(const SystemSpec& spec);

// Text that changes whenever anything affecting the system's output changes;
// part of the sweep cache key.
std::string system_fingerprint(const SystemSpec& spec);

// Parses the CLI form "id=template". Variants:
//   "id:midi=template"           external command writing MIDI
//   "id@30=template"             timeout in seconds
//   "id=builtin:mock"            mock with default parameters
//   "id=builtin:mock?p0=0&k=0.5" mock with overrides (p0, k, snr0, jitter_s)
SystemSpec parse_system_spec(std::string_view text);

// Probability that the mock drops a note at `snr_db`.
double mock_drop_probability(const MockParams& params, double snr_db);

// Deterministic in (reference, snr_db, params, seed).
NoteList mock_transcriber(const NoteList& reference, double snr_db, const MockParams& params,
                          std::uint64_t seed);

// Runs the external command on `audio_path`, writing its output under
// `work_dir`, and parses the result.
//
// Throws TranscriberError (with captured stderr) on a nonzero exit or a
// missing output file, TimeoutError when the command exceeds timeout_s (the
// whole process group is killed), and ParseError for unparsable output.
NoteList run_transcriber(const TranscriberSpec& spec, const std::filesystem::path& audio_path,
                         const std::filesystem::path& work_dir);

}  // namespace noisebench

#endif  // NOISEBENCH_TRANSCRIBER_H_
