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

#ifndef NOISEBENCH_NOTES_H_
#define NOISEBENCH_NOTES_H_

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace noisebench {

struct NoteEvent {
  double onset_s = 0.0;
  double offset_s = 0.0;
  int pitch = 0;                 // MIDI note number, 0..127
  std::optional<int> velocity;   // 1..127 when known

  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

// Notes kept sorted by (onset, pitch). Offsets and velocities are carried
// along but do not take part in onset scoring.
class NoteList {
 public:
  NoteList() = default;
  // Validates every note (offset > onset >= 0, pitch and velocity ranges)
  // and sorts. Throws DomainError naming the first bad note.
  explicit NoteList(std::vector<NoteEvent> notes);

  std::span<const NoteEvent> notes() const { return notes_; }
  std::size_t size() const { return notes_.size(); }
  bool empty() const { return notes_.empty(); }
  const NoteEvent& operator[](std::size_t i) const { return notes_[i]; }
  auto begin() const { return notes_.begin(); }
  auto end() const { return notes_.end(); }

  friend bool operator==(const NoteList&, const NoteList&) = default;

 private:
  std::vector<NoteEvent> notes_;
};

// Reads `onset<TAB>offset<TAB>pitch[<TAB>velocity]` lines; blank lines and
// lines starting with '#' are skipped. Throws ParseError with the 1-based
// line number for malformed or invalid notes, IoError if unreadable.
NoteList read_notes_tsv(const std::filesystem::path& path);

// Shortest round-trip decimal formatting; velocity written when present.
void write_notes_tsv(const NoteList& notes, const std::filesystem::path& path);

// Dispatches on extension: .mid/.midi use read_midi, anything else TSV.
NoteList read_notes(const std::filesystem::path& path);

}  // namespace noisebench

#endif  // NOISEBENCH_NOTES_H_
