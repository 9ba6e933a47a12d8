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

#include "noisebench/midi.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "noisebench/error.h"

namespace noisebench {
namespace {

constexpr std::uint32_t kDefaultTempoUs = 500000;  // 120 bpm

struct TempoEvent {
  std::uint64_t tick;
  std::uint32_t us_per_quarter;
  std::size_t order;  // tie-break: later events at the same tick win
};

struct RawNote {
  std::uint64_t on_tick;
  std::uint64_t off_tick;
  int pitch;
  int velocity;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> bytes, std::size_t begin, std::size_t end)
      : bytes_(bytes), pos_(begin), end_(end) {}

  bool done() const { return pos_ >= end_; }
  std::size_t pos() const { return pos_; }

  std::uint8_t u8() {
    if (pos_ >= end_) throw ParseError(at("unexpected end of track"), pos_);
    return bytes_[pos_++];
  }

  std::uint32_t varint() {
    const std::size_t start = pos_;
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      const std::uint8_t b = u8();
      value = (value << 7) | (b & 0x7F);
      if ((b & 0x80) == 0) return value;
    }
    throw ParseError(at_offset("variable-length quantity longer than 4 bytes", start), start);
  }

  void skip(std::size_t n) {
    if (n > end_ - pos_) throw ParseError(at("event data runs past end of track"), pos_);
    pos_ += n;
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    const std::size_t start = pos_;
    skip(n);
    return bytes_.subspan(start, n);
  }

 private:
  std::string at(const std::string& what) const { return at_offset(what, pos_); }
  static std::string at_offset(const std::string& what, std::size_t offset) {
    return "MIDI: " + what + " at byte " + std::to_string(offset);
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
  std::size_t end_;
};

std::uint32_t be32(std::span<const std::uint8_t> b, std::size_t at) {
  return (static_cast<std::uint32_t>(b[at]) << 24) | (static_cast<std::uint32_t>(b[at + 1]) << 16) |
         (static_cast<std::uint32_t>(b[at + 2]) << 8) | static_cast<std::uint32_t>(b[at + 3]);
}

std::uint16_t be16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

struct TrackResult {
  std::vector<RawNote> notes;
  std::size_t unmatched_offs = 0;
  std::size_t zero_length = 0;
  std::size_t unterminated = 0;
};

TrackResult parse_track(std::span<const std::uint8_t> bytes, std::size_t begin, std::size_t end,
                        std::vector<TempoEvent>& tempos) {
  Reader in(bytes, begin, end);
  TrackResult out;
  // (channel, pitch) -> queue of (on tick, velocity)
  std::map<std::pair<int, int>, std::deque<std::pair<std::uint64_t, int>>> open;
  std::uint64_t tick = 0;
  std::uint8_t running = 0;

  const auto close = [&](int channel, int pitch) {
    auto it = open.find({channel, pitch});
    if (it == open.end() || it->second.empty()) {
      ++out.unmatched_offs;
      return;
    }
    const auto [on_tick, velocity] = it->second.front();
    it->second.pop_front();
    if (tick == on_tick) {
      ++out.zero_length;
      return;
    }
    out.notes.push_back({on_tick, tick, pitch, velocity});
  };

  while (!in.done()) {
    tick += in.varint();
    const std::size_t event_pos = in.pos();
    std::uint8_t status = in.u8();
    std::uint8_t first_data = 0;
    bool have_first = false;
    if (status < 0x80) {
      if (running == 0) throw ParseError("MIDI: data byte without running status at byte " + std::to_string(event_pos), event_pos);
      first_data = status;
      have_first = true;
      status = running;
    }

    if (status == 0xFF) {
      running = 0;
      const std::uint8_t type = in.u8();
      const std::uint32_t len = in.varint();
      const auto data = in.take(len);
      if (type == 0x51) {
        if (len != 3) throw ParseError("MIDI: tempo event must carry 3 bytes at byte " + std::to_string(event_pos), event_pos);
        const std::uint32_t us = (static_cast<std::uint32_t>(data[0]) << 16) |
                                 (static_cast<std::uint32_t>(data[1]) << 8) | data[2];
        if (us == 0) throw ParseError("MIDI: zero tempo at byte " + std::to_string(event_pos), event_pos);
        tempos.push_back({tick, us, tempos.size()});
      } else if (type == 0x2F) {
        break;
      }
      continue;
    }
    if (status == 0xF0 || status == 0xF7) {
      running = 0;
      in.skip(in.varint());
      continue;
    }
    if (status >= 0xF1) {
      throw ParseError("MIDI: unexpected system status byte at byte " + std::to_string(event_pos), event_pos);
    }

    running = status;
    const int kind = status & 0xF0;
    const int channel = status & 0x0F;
    const int data_len = (kind == 0xC0 || kind == 0xD0) ? 1 : 2;
    std::uint8_t d[2] = {0, 0};
    d[0] = have_first ? first_data : in.u8();
    if (data_len == 2) d[1] = in.u8();
    if ((d[0] | d[1]) & 0x80) {
      throw ParseError("MIDI: data byte with high bit set at byte " + std::to_string(event_pos), event_pos);
    }

    if (kind == 0x90 && d[1] > 0) {
      open[{channel, d[0]}].emplace_back(tick, d[1]);
    } else if (kind == 0x80 || kind == 0x90) {
      close(channel, d[0]);
    }
  }

  for (auto& [key, queue] : open) {
    for (const auto& [on_tick, velocity] : queue) {
      if (tick == on_tick) {
        ++out.zero_length;
        continue;
      }
      ++out.unterminated;
      out.notes.push_back({on_tick, tick, key.second, velocity});
    }
  }
  return out;
}

// Piecewise-linear tick -> seconds map.
class TempoMap {
 public:
  TempoMap(std::vector<TempoEvent> events, std::uint16_t division) {
    if (division & 0x8000) {
      const int fps = -static_cast<std::int8_t>(division >> 8);
      const int ticks_per_frame = division & 0xFF;
      if (fps <= 0 || ticks_per_frame == 0) throw FormatError("MThd chunk: invalid SMPTE division");
      const double frames = fps == 29 ? 30000.0 / 1001.0 : static_cast<double>(fps);
      smpte_seconds_per_tick_ = 1.0 / (frames * ticks_per_frame);
      return;
    }
    if (division == 0) throw FormatError("MThd chunk: zero ticks per quarter note");
    ppq_ = division;
    std::stable_sort(events.begin(), events.end(), [](const TempoEvent& a, const TempoEvent& b) {
      return a.tick != b.tick ? a.tick < b.tick : a.order < b.order;
    });
    segments_.push_back({0, 0.0, kDefaultTempoUs});
    for (const auto& e : events) {
      Segment& last = segments_.back();
      if (e.tick == last.tick) {
        last.us_per_quarter = e.us_per_quarter;
        continue;
      }
      const double start = last.seconds + seconds_in(last, e.tick - last.tick);
      segments_.push_back({e.tick, start, e.us_per_quarter});
    }
  }

  double seconds(std::uint64_t tick) const {
    if (smpte_seconds_per_tick_ > 0.0) return static_cast<double>(tick) * smpte_seconds_per_tick_;
    auto it = std::upper_bound(segments_.begin(), segments_.end(), tick,
                               [](std::uint64_t t, const Segment& s) { return t < s.tick; });
    const Segment& seg = *std::prev(it);
    return seg.seconds + seconds_in(seg, tick - seg.tick);
  }

 private:
  struct Segment {
    std::uint64_t tick;
    double seconds;
    std::uint32_t us_per_quarter;
  };

  double seconds_in(const Segment& s, std::uint64_t ticks) const {
    return static_cast<double>(ticks) * static_cast<double>(s.us_per_quarter) /
           (1e6 * static_cast<double>(ppq_));
  }

  std::vector<Segment> segments_;
  std::uint16_t ppq_ = 0;
  double smpte_seconds_per_tick_ = 0.0;
};

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xFF));
}

void put_varint(std::vector<std::uint8_t>& out, std::uint32_t v) {
  std::uint8_t buf[5];
  int n = 0;
  buf[n++] = v & 0x7F;
  while (v >>= 7) buf[n++] = static_cast<std::uint8_t>((v & 0x7F) | 0x80);
  while (n > 0) out.push_back(buf[--n]);
}

}  // namespace

MidiReadResult parse_midi(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 14 || std::memcmp(bytes.data(), "MThd", 4) != 0) {
    throw ParseError("MIDI: missing MThd header chunk at byte 0", 0);
  }
  const std::uint32_t header_len = be32(bytes, 4);
  if (header_len < 6 || header_len > bytes.size() - 8) {
    throw ParseError("MIDI: bad MThd chunk length at byte 4", 4);
  }
  const std::uint16_t format = be16(bytes, 8);
  const std::uint16_t division = be16(bytes, 12);
  if (format > 1) {
    throw FormatError("MIDI: format " + std::to_string(format) + " files are not supported");
  }

  std::vector<TempoEvent> tempos;
  std::vector<TrackResult> tracks;
  std::size_t pos = 8 + header_len;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 8) throw ParseError("MIDI: truncated chunk header at byte " + std::to_string(pos), pos);
    const std::uint32_t len = be32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (len > bytes.size() - body) {
      throw ParseError("MIDI: chunk length " + std::to_string(len) + " runs past end of file at byte " +
                           std::to_string(pos + 4),
                       pos + 4);
    }
    if (std::memcmp(bytes.data() + pos, "MTrk", 4) == 0) {
      tracks.push_back(parse_track(bytes, body, body + len, tempos));
    }
    pos = body + len;
  }

  const TempoMap map(std::move(tempos), division);
  MidiReadResult result;
  std::vector<NoteEvent> notes;
  for (const auto& track : tracks) {
    result.unmatched_note_offs += track.unmatched_offs;
    result.zero_length_notes += track.zero_length;
    result.unterminated_notes += track.unterminated;
    for (const auto& n : track.notes) {
      notes.push_back({map.seconds(n.on_tick), map.seconds(n.off_tick), n.pitch, n.velocity});
    }
  }
  result.notes = NoteList(std::move(notes));
  return result;
}

MidiReadResult read_midi_detailed(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_midi(bytes);
}

NoteList read_midi(const std::filesystem::path& path) { return read_midi_detailed(path).notes; }

void write_midi(const NoteList& notes, const std::filesystem::path& path, int ticks_per_quarter,
                double bpm) {
  if (ticks_per_quarter <= 0 || ticks_per_quarter > 0x7FFF || !(bpm > 0.0)) {
    throw DomainError("invalid MIDI time base");
  }
  const double ticks_per_second = ticks_per_quarter * bpm / 60.0;
  struct Event {
    std::uint64_t tick;
    bool on;
    int pitch;
    int velocity;
  };
  std::vector<Event> events;
  for (const auto& n : notes) {
    const auto on = static_cast<std::uint64_t>(std::llround(n.onset_s * ticks_per_second));
    auto off = static_cast<std::uint64_t>(std::llround(n.offset_s * ticks_per_second));
    off = std::max(off, on + 1);
    events.push_back({on, true, n.pitch, n.velocity.value_or(80)});
    events.push_back({off, false, n.pitch, 0});
  }
  // Offs before ons at the same tick so repeated notes pair correctly.
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.tick != b.tick) return a.tick < b.tick;
    return !a.on && b.on;
  });

  std::vector<std::uint8_t> track;
  const auto us = static_cast<std::uint32_t>(std::llround(60e6 / bpm));
  track.insert(track.end(), {0x00, 0xFF, 0x51, 0x03});
  track.push_back(static_cast<std::uint8_t>((us >> 16) & 0xFF));
  track.push_back(static_cast<std::uint8_t>((us >> 8) & 0xFF));
  track.push_back(static_cast<std::uint8_t>(us & 0xFF));
  std::uint64_t last = 0;
  for (const auto& e : events) {
    put_varint(track, static_cast<std::uint32_t>(e.tick - last));
    last = e.tick;
    track.push_back(e.on ? 0x90 : 0x80);
    track.push_back(static_cast<std::uint8_t>(e.pitch));
    track.push_back(static_cast<std::uint8_t>(e.on ? e.velocity : 0));
  }
  track.insert(track.end(), {0x00, 0xFF, 0x2F, 0x00});

  std::vector<std::uint8_t> out = {'M', 'T', 'h', 'd', 0, 0, 0, 6, 0, 0, 0, 1};
  out.push_back(static_cast<std::uint8_t>(ticks_per_quarter >> 8));
  out.push_back(static_cast<std::uint8_t>(ticks_per_quarter & 0xFF));
  out.insert(out.end(), {'M', 'T', 'r', 'k'});
  put_be32(out, static_cast<std::uint32_t>(track.size()));
  out.insert(out.end(), track.begin(), track.end());

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("failed writing " + path.string());
}

}  // namespace noisebench
