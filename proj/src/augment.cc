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

#include "noisebench/augment.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include "json.hpp"
#include "noisebench/error.h"
#include "noisebench/parallel.h"
#include "noisebench/random.h"
#include "noisebench/text.h"

namespace noisebench {
namespace {

void require_writable_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const auto probe = dir / ".noisebench-write-probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

nlohmann::json mix_json(std::string_view source_id, const MixMetadata& m) {
  nlohmann::json doc;
  doc["source_id"] = source_id;
  doc["target_snr_db"] = m.target_snr_db;
  doc["achieved_snr_db"] = m.achieved_snr_db;
  doc["noise_seed"] = m.noise_seed;
  doc["noise_gain"] = m.noise_gain;
  doc["renorm_gain"] = m.renorm_gain;
  doc["clipped_sample_count"] = m.clip.clipped_sample_count;
  doc["total_sample_count"] = m.clip.total_sample_count;
  return doc;
}

std::vector<const ManifestRecord*> sorted_by_id(const Manifest& manifest) {
  std::vector<const ManifestRecord*> records;
  for (const auto& r : manifest.records) records.push_back(&r);
  std::sort(records.begin(), records.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });
  return records;
}

}  // namespace

void SnrGrid::validate() const {
  if (!std::isfinite(lo_db) || !std::isfinite(hi_db) || !std::isfinite(step_db)) {
    throw DomainError("SNR grid bounds must be finite");
  }
  if (lo_db > hi_db) throw DomainError("SNR grid requires lo <= hi");
  if (!(step_db > 0.0)) throw DomainError("SNR grid step must be positive");
}

SnrGrid parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw DomainError("SNR grid must look like lo:hi:step, got '" +
                      std::string(text) + "'");
  }
  SnrGrid grid;
  double* fields[] = {&grid.lo_db, &grid.hi_db, &grid.step_db};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto v = parse_double(parts[i]);
    if (!v) throw DomainError("SNR grid field '" + std::string(parts[i]) + "' is not a number");
    *fields[i] = *v;
  }
  grid.validate();
  return grid;
}

std::string format_grid(const SnrGrid& grid) {
  return format_double(grid.lo_db) + ":" + format_double(grid.hi_db) + ":" +
         format_double(grid.step_db);
}

std::vector<double> snr_levels(const SnrGrid& grid) {
  grid.validate();
  const double span = (grid.hi_db - grid.lo_db) / grid.step_db;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> levels(count);
  for (std::size_t i = 0; i < count; ++i) {
    levels[i] = grid.lo_db + static_cast<double>(i) * grid.step_db;
  }
  return levels;
}

std::string format_snr_level(double snr_db) {
  if (std::isfinite(snr_db) && snr_db == std::round(snr_db) &&
      std::fabs(snr_db) < 1e15) {
    return std::to_string(static_cast<long long>(snr_db));
  }
  return format_double(snr_db);
}

Cnr parse_cnr(std::string_view text) {
  const auto t = trim(text);
  if (t == "inf" || t == "infinity" || t == "Infinity" || t == "INF") {
    return Cnr::infinity();
  }
  const auto parts = split(t, '/');
  const auto bad = [&] {
    return DomainError("CNR must be a non-negative number, ratio a/b or 'inf', got '" +
                       std::string(text) + "'");
  };
  if (parts.size() > 2) throw bad();
  const auto num = parse_double(parts[0]);
  const auto den = parts.size() == 2 ? parse_double(parts[1]) : std::optional<double>(1.0);
  if (!num || !den || !std::isfinite(*num) || !std::isfinite(*den) || *num < 0.0 ||
      *den < 0.0 || (*num == 0.0 && *den == 0.0)) {
    throw bad();
  }
  if (*den == 0.0) return Cnr::infinity();
  return Cnr{*num, *den};
}

std::string format_cnr(const Cnr& cnr) {
  if (cnr.is_infinite()) return "inf";
  if (cnr.noisy == 1.0) return format_double(cnr.clean);
  return format_double(cnr.clean) + "/" + format_double(cnr.noisy);
}

void CnrPolicy::validate() const {
  if (!(cnr.clean >= 0.0) || !(cnr.noisy >= 0.0) || (cnr.clean == 0.0 && cnr.noisy == 0.0)) {
    throw DomainError("CNR must be non-negative");
  }
  if (!std::isfinite(snr_lo_db) || !std::isfinite(snr_hi_db) || snr_lo_db > snr_hi_db) {
    throw DomainError("CNR policy requires finite snr_lo_db <= snr_hi_db");
  }
}

AudioBuffer white_noise(std::size_t length, std::uint32_t sample_rate,
                        std::uint64_t seed) {
  if (length == 0) throw DomainError("white noise length must be positive");
  std::mt19937_64 engine(seed);
  std::vector<double> out(length);
  std::size_t i = 0;
  while (i < length) {
    const double u = 2.0 * to_unit_interval(engine()) - 1.0;
    const double v = 2.0 * to_unit_interval(engine()) - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    out[i++] = static_cast<float>(u * f);
    if (i < length) out[i++] = static_cast<float>(v * f);
  }
  return AudioBuffer(std::move(out), sample_rate);
}

double noise_gain_for_snr(double signal_power, double noise_power, double snr_db) {
  if (signal_power == 0.0) {
    throw SilentSignalError("signal power is zero: SNR is undefined");
  }
  if (!(signal_power > 0.0) || !std::isfinite(signal_power)) {
    throw DomainError("signal power must be positive and finite");
  }
  if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
    throw DomainError("noise power must be positive and finite");
  }
  if (!std::isfinite(snr_db)) throw DomainError("target SNR must be finite");
  return std::sqrt(signal_power / (noise_power * std::pow(10.0, snr_db / 10.0)));
}

MixResult inject_noise(const AudioBuffer& signal, double snr_db,
                       std::uint64_t noise_seed, double clip_limit) {
  const double signal_power = power(signal);
  if (signal_power == 0.0) {
    throw SilentSignalError("cannot inject noise at a fixed SNR into a silent signal");
  }
  const AudioBuffer noise = white_noise(signal.size(), signal.sample_rate(), noise_seed);
  const double gain = noise_gain_for_snr(signal_power, power(noise), snr_db);

  const auto s = signal.samples();
  const auto n = noise.samples();
  const std::size_t len = s.size();
  std::vector<double> mix(len);
  for (std::size_t i = 0; i < len; ++i) mix[i] = s[i] + gain * n[i];

  double mix_sum = 0.0;
  for (double x : mix) mix_sum += x * x;
  const double mix_power = mix_sum / static_cast<double>(len);
  if (mix_power == 0.0) throw SilentSignalError("noisy mixture cancelled to silence");
  const double renorm = std::sqrt(signal_power) / std::sqrt(mix_power);

  // Track the rescaled components separately to measure the achieved SNR.
  double sig_sum = 0.0;
  double noise_sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double cs = renorm * s[i];
    const double cn = renorm * (gain * n[i]);
    sig_sum += cs * cs;
    noise_sum += cn * cn;
    mix[i] *= renorm;
  }

  MixMetadata meta;
  meta.target_snr_db = snr_db;
  meta.achieved_snr_db = 10.0 * std::log10(sig_sum / noise_sum);
  meta.noise_gain = gain;
  meta.renorm_gain = renorm;
  meta.noise_seed = noise_seed;

  auto clipped = hard_clip(AudioBuffer(std::move(mix), signal.sample_rate()), clip_limit);
  meta.clip = clipped.report;
  return {std::move(clipped.buffer), meta};
}

double clean_probability(const CnrPolicy& policy) {
  policy.validate();
  if (policy.cnr.is_infinite()) return 1.0;
  return policy.cnr.clean / (policy.cnr.clean + policy.cnr.noisy);
}

AugmentationDecision sample_decision(const CnrPolicy& policy, std::uint64_t draw_index) {
  const double p = clean_probability(policy);
  const double u = uniform_at(policy.seed, 2 * draw_index);
  if (u < p) return {AugmentationDecision::Kind::kClean, std::nullopt};
  const double v = uniform_at(policy.seed, 2 * draw_index + 1);
  const double snr = policy.snr_lo_db + (policy.snr_hi_db - policy.snr_lo_db) * v;
  return {AugmentationDecision::Kind::kNoisy, snr};
}

std::uint64_t derive_noise_seed(std::uint64_t master_seed,
                                std::string_view recording_id, double snr_db) {
  return Fnv1a64()
      .u64(master_seed)
      .str(recording_id)
      .str(format_snr_level(snr_db))
      .digest();
}

std::string augmented_stem(std::string_view recording_id, double snr_db) {
  return std::string(recording_id) + "__snr" + format_snr_level(snr_db);
}

void write_mix_sidecar(const std::filesystem::path& path, std::string_view source_id,
                       const MixMetadata& metadata) {
  write_json_file(path, mix_json(source_id, metadata));
}

AugmentReport augment_corpus(const Manifest& manifest, const SnrGrid& grid,
                             std::uint64_t master_seed,
                             const std::filesystem::path& out_dir,
                             const AugmentOptions& options) {
  const auto levels = snr_levels(grid);
  require_writable_dir(out_dir);
  const auto records = sorted_by_id(manifest);

  std::vector<std::vector<AugmentedFile>> per_record(records.size());
  std::vector<std::optional<std::string>> failures(records.size());

  parallel_for(records.size(), options.workers, [&](std::size_t r) {
    const ManifestRecord& rec = *records[r];
    std::optional<AudioBuffer> source;
    try {
      source = read_wav(rec.audio_path);
      if (source->empty()) throw DomainError("audio file has no samples");
      if (power(*source) == 0.0) throw SilentSignalError("audio file is silent");
    } catch (const Error& e) {
      failures[r] = e.what();
      return;
    }
    // Write failures past this point are fatal to the whole run.
    for (double level : levels) {
      const auto seed = derive_noise_seed(master_seed, rec.id, level);
      MixResult mixed = inject_noise(*source, level, seed, options.clip_limit);
      const std::string stem = augmented_stem(rec.id, level);
      const auto wav_path = out_dir / (stem + ".wav");
      write_wav(mixed.audio, wav_path, options.encoding);
      write_mix_sidecar(out_dir / (stem + ".json"), rec.id, mixed.metadata);
      per_record[r].push_back({rec.id, wav_path, mixed.metadata});
    }
  });

  AugmentReport report;
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (failures[r]) {
      report.errors.push_back({records[r]->id, *failures[r]});
      continue;
    }
    for (auto& f : per_record[r]) report.files.push_back(std::move(f));
  }
  return report;
}

CnrAugmentReport augment_corpus_cnr(const Manifest& manifest, const CnrPolicy& policy,
                                    std::size_t draws_per_record,
                                    const std::filesystem::path& out_dir,
                                    const AugmentOptions& options) {
  policy.validate();
  require_writable_dir(out_dir);
  const auto records = sorted_by_id(manifest);

  std::vector<std::vector<CnrAugmentedFile>> per_record(records.size());
  std::vector<std::optional<std::string>> failures(records.size());

  parallel_for(records.size(), options.workers, [&](std::size_t r) {
    const ManifestRecord& rec = *records[r];
    std::optional<AudioBuffer> source;
    try {
      source = read_wav(rec.audio_path);
      if (source->empty()) throw DomainError("audio file has no samples");
      if (power(*source) == 0.0) throw SilentSignalError("audio file is silent");
    } catch (const Error& e) {
      failures[r] = e.what();
      return;
    }
    for (std::size_t k = 0; k < draws_per_record; ++k) {
      const std::uint64_t index = static_cast<std::uint64_t>(r) * draws_per_record + k;
      const AugmentationDecision decision = sample_decision(policy, index);
      const std::string stem = rec.id + "__draw" + std::to_string(k);
      CnrAugmentedFile file{rec.id, k, out_dir / (stem + ".wav"), decision, std::nullopt};
      nlohmann::json sidecar;
      if (decision.kind == AugmentationDecision::Kind::kClean) {
        write_wav(*source, file.wav_path, options.encoding);
        sidecar["source_id"] = rec.id;
        sidecar["kind"] = "clean";
      } else {
        const auto seed = Fnv1a64().u64(policy.seed).str(rec.id).u64(k).digest();
        MixResult mixed = inject_noise(*source, *decision.snr_db, seed, options.clip_limit);
        write_wav(mixed.audio, file.wav_path, options.encoding);
        sidecar = mix_json(rec.id, mixed.metadata);
        sidecar["kind"] = "noisy";
        file.metadata = mixed.metadata;
      }
      sidecar["draw"] = k;
      sidecar["draw_index"] = index;
      sidecar["cnr"] = format_cnr(policy.cnr);
      write_json_file(out_dir / (stem + ".json"), sidecar);
      per_record[r].push_back(std::move(file));
    }
  });

  CnrAugmentReport report;
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (failures[r]) {
      report.errors.push_back({records[r]->id, *failures[r]});
      continue;
    }
    for (auto& f : per_record[r]) report.files.push_back(std::move(f));
  }
  return report;
}

}  // namespace noisebench
