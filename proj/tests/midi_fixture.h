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

#ifndef NOISEBENCH_TESTS_MIDI_FIXTURE_H_
#define NOISEBENCH_TESTS_MIDI_FIXTURE_H_

#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

namespace noisebench::testing {

// Builds Standard MIDI Files byte by byte.
class SmfBuilder {
 public:
  SmfBuilder(int format, std::uint16_t division) : format_(format), division_(division) {}

  // Track events as (delta, raw event bytes).
  class Track {
   public:
    Track& event(std::uint32_t delta, std::initializer_list<std::uint8_t> bytes) {
      varint(delta);
      data_.insert(data_.end(), bytes);
      return *this;
    }
    Track& tempo(std::uint32_t delta, std::uint32_t us_per_quarter) {
      return event(delta, {0xFF, 0x51, 0x03, static_cast<std::uint8_t>(us_per_quarter >> 16),
                           static_cast<std::uint8_t>(us_per_quarter >> 8), static_cast<std::uint8_t>(us_per_quarter)});
    }
    Track& end(std::uint32_t delta = 0) { return event(delta, {0xFF, 0x2F, 0x00}); }
    void varint(std::uint32_t v) {
      std::uint8_t buf[5];
      int n = 0;
      buf[n++] = v & 0x7F;
      while (v >>= 7) buf[n++] = static_cast<std::uint8_t>(0x80 | (v & 0x7F));
      while (n) data_.push_back(buf[--n]);
    }
    std::vector<std::uint8_t> data_;
  };

  Track& track() { return tracks_.emplace_back(); }

  std::vector<std::uint8_t> bytes() const {
    std::vector<std::uint8_t> b = {'M', 'T', 'h', 'd', 0, 0, 0, 6};
    const auto be16 = [&](std::uint32_t v) {
      b.push_back(static_cast<std::uint8_t>(v >> 8));
      b.push_back(static_cast<std::uint8_t>(v));
    };
    be16(format_);
    be16(static_cast<std::uint32_t>(tracks_.size()));
    be16(division_);
    for (const auto& t : tracks_) {
      b.insert(b.end(), {'M', 'T', 'r', 'k'});
      const auto n = static_cast<std::uint32_t>(t.data_.size());
      for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<std::uint8_t>(n >> s));
      b.insert(b.end(), t.data_.begin(), t.data_.end());
    }
    return b;
  }

 private:
  int format_;
  std::uint16_t division_;
  std::vector<Track> tracks_;
};

// Tick-by-tick tempo-map integration: each tick lasts the tempo in force at
// its start. Exact in integer microseconds x ticks-per-quarter.
inline double oracle_seconds(std::uint64_t tick, const std::map<std::uint64_t, std::uint64_t>& tempo_at, int ppq) {
  std::uint64_t tempo = 500000;
  std::uint64_t total = 0;
  for (std::uint64_t t = 0; t < tick; ++t) {
    if (auto it = tempo_at.find(t); it != tempo_at.end()) tempo = it->second;
    total += tempo;
  }
  return static_cast<double>(total) / (static_cast<double>(ppq) * 1e6);
}

}  // namespace noisebench::testing

#endif  // NOISEBENCH_TESTS_MIDI_FIXTURE_H_
