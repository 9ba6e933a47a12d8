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

#include "noisebench/synthetic.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "noisebench/error.h"
#include "noisebench/midi.h"
#include "noisebench/random.h"
#include "noisebench/wav.h"

namespace noisebench {

NoteList synthetic_notes(double duration_s, std::uint64_t seed) {
  std::vector<NoteEvent> notes;
  double t = 0.1;
  std::uint64_t counter = 0;
  while (true) {
    const double length = 0.1 + 0.4 * uniform_at(seed, counter++);
    if (t + length >= duration_s) break;
    const int pitch = 48 + static_cast<int>(37.0 * uniform_at(seed, counter++));
    const int velocity = 40 + static_cast<int>(80.0 * uniform_at(seed, counter++));
    notes.push_back({t, t + length, pitch, velocity});
    t += 0.15 + 0.25 * uniform_at(seed, counter++);
  }
  return NoteList(std::move(notes));
}

AudioBuffer render_notes(const NoteList& notes, double duration_s, std::uint32_t sample_rate) {
  const auto length = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  std::vector<double> out(std::max<std::size_t>(length, 1), 0.0);
  for (const auto& n : notes) {
    const double freq = 440.0 * std::pow(2.0, (n.pitch - 69) / 12.0);
    const double amp = n.velocity.value_or(80) / 127.0;
    const auto begin = static_cast<std::size_t>(n.onset_s * sample_rate);
    const auto end = std::min(out.size(), static_cast<std::size_t>(n.offset_s * sample_rate));
    for (std::size_t i = begin; i < end; ++i) {
      const double t = static_cast<double>(i - begin) / sample_rate;
      const double env = std::exp(-3.0 * t) * std::min(1.0, t / 0.005);
      out[i] += amp * env *
                (std::sin(2.0 * std::numbers::pi * freq * t) + 0.3 * std::sin(4.0 * std::numbers::pi * freq * t));
    }
  }
  double peak = 0.0;
  for (double x : out) peak = std::max(peak, std::fabs(x));
  if (peak > 0.0) {
    for (double& x : out) x *= 0.8 / peak;
  }
  return AudioBuffer(std::move(out), sample_rate);
}

std::filesystem::path make_synthetic_corpus(const std::filesystem::path& dir, std::size_t count,
                                            std::uint64_t seed, double duration_s, std::uint32_t sample_rate) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const auto manifest_path = dir / "manifest.csv";
  std::ofstream manifest(manifest_path, std::ios::trunc);
  if (!manifest) throw IoError("cannot write " + manifest_path.string());
  manifest << "id,audio_filename,midi_filename,split\n";
  for (std::size_t i = 0; i < count; ++i) {
    const std::string id = (i < 10 ? "syn0" : "syn") + std::to_string(i);
    const auto notes = synthetic_notes(duration_s, mix64(seed ^ mix64(i)));
    write_midi(notes, dir / (id + ".mid"));
    // Render from the MIDI as read back, so audio and reference agree tick-exactly.
    const NoteList reference = read_midi(dir / (id + ".mid"));
    write_wav(render_notes(reference, duration_s, sample_rate), dir / (id + ".wav"), WavEncoding::kFloat32);
    manifest << id << ',' << id << ".wav," << id << ".mid,test\n";
  }
  if (!manifest) throw IoError("failed writing " + manifest_path.string());
  return manifest_path;
}

}  // namespace noisebench
