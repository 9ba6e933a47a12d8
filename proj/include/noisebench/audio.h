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

#ifndef NOISEBENCH_AUDIO_H_
#define NOISEBENCH_AUDIO_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace noisebench {

// Mono sample sequence at a fixed rate. Amplitudes are nominally full scale
// [-1, 1] and held in double precision; the buffer is an immutable value.
class AudioBuffer {
 public:
  // Throws DomainError if sample_rate is zero.
  AudioBuffer(std::vector<double> samples, std::uint32_t sample_rate);

  std::span<const double> samples() const { return samples_; }
  std::uint32_t sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  double duration_s() const {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }

  // Moves the storage out; the buffer is left empty.
  std::vector<double> release() && { return std::move(samples_); }

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;

 private:
  std::vector<double> samples_;
  std::uint32_t sample_rate_;
};

struct ClipReport {
  std::size_t clipped_sample_count = 0;
  std::size_t total_sample_count = 0;

  friend bool operator==(const ClipReport&, const ClipReport&) = default;
};

// Mean-square amplitude, (1/N) * sum(x_i^2), accumulated in double.
// Throws DomainError on an empty buffer.
double power(const AudioBuffer& buffer);

// sqrt(power(buffer)).
double rms(const AudioBuffer& buffer);

AudioBuffer scale(const AudioBuffer& buffer, double gain);

struct ClipResult {
  AudioBuffer buffer;
  ClipReport report;
};

// Saturates every sample to [-limit, limit]. Samples already in range are
// copied unchanged. Throws DomainError unless limit > 0.
ClipResult hard_clip(const AudioBuffer& buffer, double limit = 1.0);

}  // namespace noisebench

#endif  // NOISEBENCH_AUDIO_H_
