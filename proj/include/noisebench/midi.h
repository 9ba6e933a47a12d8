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

#ifndef NOISEBENCH_MIDI_H_
#define NOISEBENCH_MIDI_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>

#include "noisebench/notes.h"

namespace noisebench {

struct MidiReadResult {
  NoteList notes;
  // Note-offs (or velocity-0 note-ons) with no open note of that pitch.
  std::size_t unmatched_note_offs = 0;
  // Note pairs whose on and off fall on the same tick; these are dropped.
  std::size_t zero_length_notes = 0;
  // Notes still sounding at end of track, closed there.
  std::size_t unterminated_notes = 0;
};

// Parses a Standard MIDI File (format 0 or 1). Each note-on is paired with
// the next note-off of the same channel and pitch in its track (first in,
// first out). Ticks map to seconds through the tempo map merged from all
// tracks; SMPTE time division is honored as well.
//
// Throws ParseError (position = byte offset) for malformed chunks, events or
// variable-length quantities, FormatError for unsupported file formats and
// IoError when the file cannot be read.
MidiReadResult read_midi_detailed(const std::filesystem::path& path);
MidiReadResult parse_midi(std::span<const std::uint8_t> bytes);

NoteList read_midi(const std::filesystem::path& path);

// Writes a format-0 file at a constant tempo. Onsets and offsets are
// quantized to the tick grid; notes without a velocity get 80.
void write_midi(const NoteList& notes, const std::filesystem::path& path,
                int ticks_per_quarter = 480, double bpm = 120.0);

}  // namespace noisebench

#endif  // NOISEBENCH_MIDI_H_
