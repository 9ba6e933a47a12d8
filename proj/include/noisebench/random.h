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

#ifndef NOISEBENCH_RANDOM_H_
#define NOISEBENCH_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace noisebench {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Maps 53 random bits to a double uniform on [0, 1).
constexpr double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-based uniform draw: the value depends only on (key, counter), so
// draws can be taken in any order or in parallel.
constexpr double uniform_at(std::uint64_t key, std::uint64_t counter) {
  return to_unit_interval(mix64(mix64(key) ^ mix64(counter ^ 0xD1B54A32D192ED03ull)));
}

// Incremental 64-bit FNV-1a. Multi-byte integers are fed little-endian so the
// digest is identical on every host.
class Fnv1a64 {
 public:
  Fnv1a64& bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001B3ull;
    }
    return *this;
  }
  Fnv1a64& u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      const auto b = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
      bytes(&b, 1);
    }
    return *this;
  }
  // Length-prefixed so that ("ab","c") and ("a","bc") hash differently.
  Fnv1a64& str(std::string_view s) {
    u64(s.size());
    return bytes(s.data(), s.size());
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xCBF29CE484222325ull;
};

}  // namespace noisebench

#endif  // NOISEBENCH_RANDOM_H_
