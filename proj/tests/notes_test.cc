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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "noisebench/error.h"
#include "noisebench/midi.h"
#include "noisebench/notes.h"
#include "midi_fixture.h"
#include "test_util.h"

namespace noisebench {
namespace {

using testing::TempDir;

using testing::oracle_seconds;
using testing::SmfBuilder;

TEST(NoteList, ValidatesAndSorts) {
  const NoteList list({{1.0, 2.0, 60, {}}, {0.5, 0.6, 70, 100}, {0.5, 0.9, 65, {}}});
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[0].pitch, 65);
  EXPECT_EQ(list[1].pitch, 70);
  EXPECT_EQ(list[2].pitch, 60);
  EXPECT_THROW(NoteList({{1.0, 1.0, 60, {}}}), DomainError);
  EXPECT_THROW(NoteList({{-0.1, 1.0, 60, {}}}), DomainError);
  EXPECT_THROW(NoteList({{0.0, 1.0, 128, {}}}), DomainError);
  EXPECT_THROW(NoteList({{0.0, 1.0, 60, 0}}), DomainError);
  EXPECT_TRUE(NoteList().empty());
}

TEST(NotesTsv, ParsesExamples) {
  TempDir dir;
  testing::write_text_file(dir / "one.tsv", "0.5\t1.0\t60\n");
  const NoteList one = read_notes_tsv(dir / "one.tsv");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], (NoteEvent{0.5, 1.0, 60, std::nullopt}));

  testing::write_text_file(dir / "empty.tsv", "");
  EXPECT_TRUE(read_notes_tsv(dir / "empty.tsv").empty());

  testing::write_text_file(dir / "unsorted.tsv", "# header\n2.0\t2.5\t62\t90\n\n1.0\t1.5\t64\n1.0\t1.2\t60.0\n");
  const NoteList u = read_notes_tsv(dir / "unsorted.tsv");
  ASSERT_EQ(u.size(), 3u);
  EXPECT_EQ(u[0].pitch, 60);
  EXPECT_EQ(u[1].pitch, 64);
  EXPECT_EQ(u[2].velocity, 90);
}

TEST(NotesTsv, ErrorsCarryLineNumbers) {
  TempDir dir;
  const auto expect_line = [&](const std::string& text, std::size_t line) {
    testing::write_text_file(dir / "bad.tsv", text);
    try {
      read_notes_tsv(dir / "bad.tsv");
      ADD_FAILURE() << "no error for " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.position(), line) << e.what();
    }
  };
  expect_line("0.5\t1.0\tC4\n", 1);
  expect_line("0.5\t1.0\t60\n1.0\t0.5\t60\n", 2);
  expect_line("# c\n0.5\t1.0\t60\n0.5\t1.0\t200\n", 3);
  expect_line("0.5\t1.0\n", 1);
  expect_line("0.5\t1.0\t60.5\n", 1);
  EXPECT_THROW(read_notes_tsv(dir / "missing.tsv"), IoError);
}

TEST(NotesTsv, WriteReadRoundTrip) {
  TempDir dir;
  const NoteList notes({{0.1, 0.30000000000000004, 21, 1}, {1.0 / 3.0, 2.0, 108, {}}, {5.5, 6.0, 60, 127}});
  write_notes_tsv(notes, dir / "n.tsv");
  EXPECT_EQ(read_notes_tsv(dir / "n.tsv"), notes);
  EXPECT_EQ(read_notes(dir / "n.tsv"), notes);
}

TEST(Midi, SingleNoteAt120Bpm) {
  SmfBuilder smf(0, 480);
  smf.track().tempo(0, 500000).event(0, {0x90, 60, 100}).event(480, {0x80, 60, 0}).end();
  const auto result = parse_midi(smf.bytes());
  ASSERT_EQ(result.notes.size(), 1u);
  EXPECT_EQ(result.notes[0], (NoteEvent{0.0, 0.5, 60, 100}));
}

TEST(Midi, EmptyTrackGivesEmptyList) {
  SmfBuilder smf(1, 480);
  smf.track().end();
  smf.track().end();
  EXPECT_TRUE(parse_midi(smf.bytes()).notes.empty());
}

TEST(Midi, TempoChangesMatchTickByTickOracle) {
  const int ppq = 480;
  const std::map<std::uint64_t, std::uint64_t> tempo = {{0, 500000}, {960, 1000000}, {1500, 400000}, {2501, 750000}};
  SmfBuilder smf(1, ppq);
  // Tempo track, deltas between the change points.
  smf.track().tempo(0, 500000).tempo(960, 1000000).tempo(540, 400000).tempo(1001, 750000).end();
  // Notes straddling every change, using running status and velocity-0 offs.
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> spans = {
      {0, 240}, {480, 1200}, {959, 961}, {1400, 1600}, {2000, 2600}, {2999, 4000}};
  auto& notes = smf.track();
  struct Ev {
    std::uint64_t tick;
    bool on;
    std::uint8_t pitch;
  };
  std::vector<Ev> events;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    events.push_back({spans[i].first, true, static_cast<std::uint8_t>(60 + i)});
    events.push_back({spans[i].second, false, static_cast<std::uint8_t>(60 + i)});
  }
  std::stable_sort(events.begin(), events.end(), [](const Ev& a, const Ev& b) { return a.tick < b.tick; });
  std::uint64_t now = 0;
  bool first = true;
  for (const auto& e : events) {
    const auto delta = static_cast<std::uint32_t>(e.tick - now);
    now = e.tick;
    if (first) {
      notes.event(delta, {0x90, e.pitch, static_cast<std::uint8_t>(e.on ? 90 : 0)});
      first = false;
    } else {
      notes.event(delta, {e.pitch, static_cast<std::uint8_t>(e.on ? 90 : 0)});  // running status
    }
  }
  notes.end();

  const auto result = parse_midi(smf.bytes());
  ASSERT_EQ(result.notes.size(), spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto it = std::find_if(result.notes.begin(), result.notes.end(),
                                 [&](const NoteEvent& n) { return n.pitch == static_cast<int>(60 + i); });
    ASSERT_NE(it, result.notes.end());
    EXPECT_NEAR(it->onset_s, oracle_seconds(spans[i].first, tempo, ppq), 1e-9) << i;
    EXPECT_NEAR(it->offset_s, oracle_seconds(spans[i].second, tempo, ppq), 1e-9) << i;
  }
}

TEST(Midi, SmpteDivision) {
  // -25 fps, 40 ticks per frame: 1000 ticks per second.
  SmfBuilder smf(0, static_cast<std::uint16_t>((0xE7 << 8) | 40));
  smf.track().event(250, {0x90, 64, 80}).event(750, {0x80, 64, 0}).end();
  const auto r = parse_midi(smf.bytes());
  ASSERT_EQ(r.notes.size(), 1u);
  EXPECT_NEAR(r.notes[0].onset_s, 0.25, 1e-12);
  EXPECT_NEAR(r.notes[0].offset_s, 1.0, 1e-12);
}

TEST(Midi, PairingAndCounters) {
  SmfBuilder smf(0, 100);
  smf.track()
      .event(0, {0x80, 50, 0})           // unmatched off
      .event(0, {0x90, 60, 90})          // first on
      .event(10, {0x90, 60, 91})         // overlapping on, same pitch
      .event(10, {0x80, 60, 0})          // closes the first (FIFO)
      .event(10, {0x80, 60, 0})          // closes the second
      .event(0, {0x91, 62, 90})          // channel 2, zero length
      .event(0, {0x81, 62, 0})
      .event(0, {0xF0, 0x03, 1, 2, 0xF7})  // sysex skipped
      .event(5, {0x92, 70, 90})          // never closed
      .end(45);
  const auto r = parse_midi(smf.bytes());
  EXPECT_EQ(r.unmatched_note_offs, 1u);
  EXPECT_EQ(r.zero_length_notes, 1u);
  EXPECT_EQ(r.unterminated_notes, 1u);
  ASSERT_EQ(r.notes.size(), 3u);
  // 100 ppq at 120 bpm: 0.005 s per tick.
  EXPECT_NEAR(r.notes[0].onset_s, 0.0, 1e-12);
  EXPECT_NEAR(r.notes[0].offset_s, 0.1, 1e-12);
  EXPECT_EQ(r.notes[0].velocity, 90);
  EXPECT_NEAR(r.notes[1].onset_s, 0.05, 1e-12);
  EXPECT_NEAR(r.notes[1].offset_s, 0.15, 1e-12);
  EXPECT_EQ(r.notes[2].pitch, 70);
  EXPECT_NEAR(r.notes[2].offset_s, 0.4, 1e-12);  // end of track at tick 80
}

TEST(Midi, MalformedInputs) {
  {
    SmfBuilder smf(2, 480);
    smf.track().end();
    EXPECT_THROW(parse_midi(smf.bytes()), FormatError);
  }
  {
    std::vector<std::uint8_t> b = {'R', 'I', 'F', 'F', 0, 0, 0, 6, 0, 0, 0, 1, 1, 0xE0};
    EXPECT_THROW(parse_midi(b), ParseError);
  }
  {
    // Five-byte varint delta at the start of the track data.
    SmfBuilder smf(0, 480);
    auto& t = smf.track();
    t.data_ = {0x81, 0x81, 0x81, 0x81, 0x01, 0xFF, 0x2F, 0x00};
    const auto bytes = smf.bytes();
    try {
      parse_midi(bytes);
      FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
      EXPECT_GE(e.position(), 22u);  // 14-byte header + 8-byte track header
      EXPECT_LE(e.position(), 26u);
    }
  }
  {
    // Track chunk length past end of file.
    SmfBuilder smf(0, 480);
    smf.track().event(0, {0x90, 60, 100}).event(10, {0x80, 60, 0}).end();
    auto bytes = smf.bytes();
    bytes.resize(bytes.size() - 3);
    EXPECT_THROW(parse_midi(bytes), ParseError);
  }
  {
    // Data byte with no running status.
    SmfBuilder smf(0, 480);
    smf.track().event(0, {60, 100}).end();
    EXPECT_THROW(parse_midi(smf.bytes()), ParseError);
  }
  TempDir dir;
  EXPECT_THROW(read_midi(dir / "missing.mid"), IoError);
}

TEST(Midi, WriteReadRoundTripOnTickGrid) {
  TempDir dir;
  // At 480 ppq / 120 bpm one tick is 1/960 s; choose times on that grid.
  const NoteList notes({{0.0, 0.5, 60, 100}, {0.5, 1.0, 60, 90}, {0.25, 2.0, 72, {}}, {1.0, 1.0 + 1.0 / 960.0, 21, 1}});
  write_midi(notes, dir / "a.mid");
  const NoteList back = read_midi(dir / "a.mid");
  ASSERT_EQ(back.size(), notes.size());
  for (std::size_t i = 0; i < notes.size(); ++i) {
    EXPECT_NEAR(back[i].onset_s, notes[i].onset_s, 1e-12);
    EXPECT_NEAR(back[i].offset_s, notes[i].offset_s, 1e-12);
    EXPECT_EQ(back[i].pitch, notes[i].pitch);
    EXPECT_EQ(back[i].velocity.value_or(80), notes[i].velocity.value_or(80));
  }
  EXPECT_EQ(read_notes(dir / "a.mid"), back);
}

}  // namespace
}  // namespace noisebench
