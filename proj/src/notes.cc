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

#include "noisebench/notes.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "noisebench/error.h"
#include "noisebench/midi.h"
#include "noisebench/text.h"

namespace noisebench {
namespace {

// Empty string when valid, otherwise the reason.
std::string check_note(const NoteEvent& n) {
  if (!std::isfinite(n.onset_s) || !std::isfinite(n.offset_s)) return "non-finite time";
  if (n.onset_s < 0.0) return "negative onset";
  if (!(n.offset_s > n.onset_s)) return "offset must be greater than onset";
  if (n.pitch < 0 || n.pitch > 127) return "pitch out of range 0-127";
  if (n.velocity && (*n.velocity < 1 || *n.velocity > 127)) return "velocity out of range 1-127";
  return {};
}

bool note_order(const NoteEvent& a, const NoteEvent& b) {
  if (a.onset_s != b.onset_s) return a.onset_s < b.onset_s;
  if (a.pitch != b.pitch) return a.pitch < b.pitch;
  return a.offset_s < b.offset_s;
}

}  // namespace

NoteList::NoteList(std::vector<NoteEvent> notes) : notes_(std::move(notes)) {
  for (std::size_t i = 0; i < notes_.size(); ++i) {
    const std::string why = check_note(notes_[i]);
    if (!why.empty()) throw DomainError("invalid note " + std::to_string(i) + ": " + why);
  }
  std::stable_sort(notes_.begin(), notes_.end(), note_order);
}

NoteList read_notes_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<NoteEvent> notes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto fields = split(content, '\t');
    const auto fail = [&](const std::string& why) {
      return ParseError(path.string() + ":" + std::to_string(line_no) + ": " + why, line_no);
    };
    if (fields.size() < 3 || fields.size() > 4) {
      throw fail("expected 3 or 4 tab-separated fields, found " + std::to_string(fields.size()));
    }
    const auto onset = parse_double(fields[0]);
    const auto offset = parse_double(fields[1]);
    if (!onset) throw fail("onset '" + std::string(fields[0]) + "' is not a number");
    if (!offset) throw fail("offset '" + std::string(fields[1]) + "' is not a number");
    // Pitch may be written as "60" or "60.0".
    auto pitch = parse_int(fields[2]);
    if (!pitch) {
      const auto p = parse_double(fields[2]);
      if (p && *p == std::round(*p)) pitch = static_cast<long long>(*p);
    }
    if (!pitch) throw fail("pitch '" + std::string(fields[2]) + "' is not an integer");
    if (*pitch < 0 || *pitch > 127) throw fail("pitch out of range 0-127");

    NoteEvent note{*onset, *offset, static_cast<int>(*pitch), std::nullopt};
    if (fields.size() == 4) {
      const auto vel = parse_int(fields[3]);
      if (!vel) throw fail("velocity '" + std::string(fields[3]) + "' is not an integer");
      note.velocity = static_cast<int>(*vel);
    }
    const std::string why = check_note(note);
    if (!why.empty()) throw fail(why);
    notes.push_back(note);
  }
  return NoteList(std::move(notes));
}

void write_notes_tsv(const NoteList& notes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& n : notes) {
    out << format_double(n.onset_s) << '\t' << format_double(n.offset_s) << '\t' << n.pitch;
    if (n.velocity) out << '\t' << *n.velocity;
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

NoteList read_notes(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".mid" || ext == ".midi") return read_midi(path);
  return read_notes_tsv(path);
}

}  // namespace noisebench
