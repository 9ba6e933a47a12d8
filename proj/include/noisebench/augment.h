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

#ifndef NOISEBENCH_AUGMENT_H_
#define NOISEBENCH_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noisebench/audio.h"
#include "noisebench/manifest.h"
#include "noisebench/wav.h"

namespace noisebench {

// Inclusive arithmetic SNR sweep. The default is the 18-level grid
// -6, -3, ..., 45 dB.
struct SnrGrid {
  double lo_db = -6.0;
  double hi_db = 45.0;
  double step_db = 3.0;

  // Throws DomainError unless lo <= hi, step > 0 and all are finite.
  void validate() const;

  friend bool operator==(const SnrGrid&, const SnrGrid&) = default;
};

// Parses "lo:hi:step".
SnrGrid parse_grid(std::string_view text);
std::string format_grid(const SnrGrid& grid);

// Ascending levels lo, lo+step, ... <= hi. A level within 1e-9 * step of hi
// counts as reaching it, so float rounding never drops the last level.
std::vector<double> snr_levels(const SnrGrid& grid);

// "-6", "45", "1.5": integers print without a fractional part.
std::string format_snr_level(double snr_db);

// Clean-to-noisy proportion `clean : noisy`. A zero `noisy` part means
// infinity (clean audio only).
struct Cnr {
  double clean = 1.0;
  double noisy = 1.0;

  static Cnr infinity() { return {1.0, 0.0}; }
  bool is_infinite() const { return noisy == 0.0; }
};

// Accepts "3", "1/3", "0.5", "inf", "infinity".
Cnr parse_cnr(std::string_view text);
std::string format_cnr(const Cnr& cnr);

struct CnrPolicy {
  Cnr cnr;
  double snr_lo_db = 0.0;
  double snr_hi_db = 24.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct AugmentationDecision {
  enum class Kind { kClean, kNoisy };
  Kind kind = Kind::kClean;
  std::optional<double> snr_db;  // set iff kind == kNoisy

  friend bool operator==(const AugmentationDecision&,
                         const AugmentationDecision&) = default;
};

struct MixMetadata {
  double target_snr_db = 0.0;
  double achieved_snr_db = 0.0;  // measured before clipping
  double noise_gain = 0.0;
  double renorm_gain = 0.0;
  ClipReport clip;
  std::uint64_t noise_seed = 0;

  friend bool operator==(const MixMetadata&, const MixMetadata&) = default;
};

struct MixResult {
  AudioBuffer audio;
  MixMetadata metadata;
};

// I.i.d. standard-normal samples from a seeded Mersenne Twister (whose output
// sequence is fixed by the C++ standard) via the Marsaglia polar method.
// Samples are rounded to float32 precision, so a noise buffer survives a
// float32 WAV round trip unchanged. Throws DomainError for length 0.
AudioBuffer white_noise(std::size_t length, std::uint32_t sample_rate,
                        std::uint64_t seed);

// Gain g with 10*log10(signal_power / (g^2 * noise_power)) == snr_db.
// Throws SilentSignalError when signal_power is 0 and DomainError for any
// other non-positive or non-finite power.
double noise_gain_for_snr(double signal_power, double noise_power,
                          double snr_db);

// Mixes seeded white noise into `signal` at `snr_db`: generate noise, scale it
// to the target SNR, add, rescale the mixture to the input RMS and finally
// hard clip at `clip_limit`. The achieved SNR is measured on the separately
// tracked signal and noise components after rescaling.
// Throws SilentSignalError for an all-zero signal.
MixResult inject_noise(const AudioBuffer& signal, double snr_db,
                       std::uint64_t noise_seed, double clip_limit = 1.0);

double clean_probability(const CnrPolicy& policy);

// Pure function of (policy.seed, draw_index).
AugmentationDecision sample_decision(const CnrPolicy& policy,
                                     std::uint64_t draw_index);

// Stable per-file seed: FNV-1a over master_seed, recording id and the
// formatted SNR level. Independent of processing order.
std::uint64_t derive_noise_seed(std::uint64_t master_seed,
                                std::string_view recording_id, double snr_db);

// Writes the per-file JSON sidecar: {source_id, target_snr_db,
// achieved_snr_db, noise_seed, noise_gain, renorm_gain, clipped_sample_count,
// total_sample_count}.
void write_mix_sidecar(const std::filesystem::path& path,
                       std::string_view source_id, const MixMetadata& metadata);

// `<id>__snr<level>`, e.g. "rec01__snr-6".
std::string augmented_stem(std::string_view recording_id, double snr_db);

struct AugmentedFile {
  std::string source_id;
  std::filesystem::path wav_path;
  MixMetadata metadata;
};

struct RecordError {
  std::string id;
  std::string message;
};

struct AugmentReport {
  std::vector<AugmentedFile> files;  // ordered by (source_id, snr)
  std::vector<RecordError> errors;   // ordered by id
};

struct AugmentOptions {
  WavEncoding encoding = WavEncoding::kFloat32;
  double clip_limit = 1.0;
  std::size_t workers = 1;
};

// Writes one WAV plus a JSON sidecar per (recording, grid level) into
// out_dir. Unreadable recordings are reported in AugmentReport::errors and
// do not stop the run; an unwritable out_dir throws IoError.
AugmentReport augment_corpus(const Manifest& manifest, const SnrGrid& grid,
                             std::uint64_t master_seed,
                             const std::filesystem::path& out_dir,
                             const AugmentOptions& options = {});

struct CnrAugmentedFile {
  std::string source_id;
  std::size_t draw = 0;
  std::filesystem::path wav_path;
  AugmentationDecision decision;
  std::optional<MixMetadata> metadata;  // absent for clean draws
};

struct CnrAugmentReport {
  std::vector<CnrAugmentedFile> files;
  std::vector<RecordError> errors;
};

// Training-style augmentation: for each recording (in id order) and each of
// `draws_per_record` draws, samples a clean/noisy decision from the policy
// and writes `<id>__draw<k>.wav` plus sidecar. The draw index of recording r
// and draw k is r * draws_per_record + k.
CnrAugmentReport augment_corpus_cnr(const Manifest& manifest,
                                    const CnrPolicy& policy,
                                    std::size_t draws_per_record,
                                    const std::filesystem::path& out_dir,
                                    const AugmentOptions& options = {});

}  // namespace noisebench

#endif  // NOISEBENCH_AUGMENT_H_
