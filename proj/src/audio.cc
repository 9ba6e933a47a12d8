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

#include "noisebench/audio.h"

#include <algorithm>
#include <cmath>

#include "noisebench/error.h"

namespace noisebench {

AudioBuffer::AudioBuffer(std::vector<double> samples, std::uint32_t sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ == 0) throw DomainError("sample rate must be positive");
}

double power(const AudioBuffer& buffer) {
  if (buffer.empty()) throw DomainError("power of an empty buffer is undefined");
  double sum = 0.0;
  for (double x : buffer.samples()) sum += x * x;
  return sum / static_cast<double>(buffer.size());
}

double rms(const AudioBuffer& buffer) { return std::sqrt(power(buffer)); }

AudioBuffer scale(const AudioBuffer& buffer, double gain) {
  std::vector<double> out(buffer.samples().begin(), buffer.samples().end());
  for (double& x : out) x *= gain;
  return AudioBuffer(std::move(out), buffer.sample_rate());
}

ClipResult hard_clip(const AudioBuffer& buffer, double limit) {
  if (!(limit > 0.0)) throw DomainError("clip limit must be positive");
  std::vector<double> out(buffer.samples().begin(), buffer.samples().end());
  std::size_t clipped = 0;
  for (double& x : out) {
    if (std::fabs(x) > limit) {
      x = x > 0.0 ? limit : -limit;
      ++clipped;
    }
  }
  ClipReport report{clipped, out.size()};
  return {AudioBuffer(std::move(out), buffer.sample_rate()), report};
}

}  // namespace noisebench
