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

#ifndef NOISEBENCH_SWEEP_H_
#define NOISEBENCH_SWEEP_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "noisebench/augment.h"
#include "noisebench/eval.h"
#include "noisebench/manifest.h"
#include "noisebench/transcriber.h"

namespace noisebench {

struct CellKey {
  std::string system_id;
  std::string recording_id;
  double snr_db = 0.0;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct SweepMetadata {
  std::uint64_t master_seed = 0;
  SnrGrid grid;
  double tolerance_s = kDefaultOnsetToleranceS;
  std::vector<std::string> systems;  // ids, in request order
  // Wall-clock bounds of the run (ISO 8601 UTC). Not part of the default
  // serialization so that identical sweeps serialize identically.
  std::string started_at;
  std::string finished_at;

  friend bool operator==(const SweepMetadata&, const SweepMetadata&) = default;
};

struct SweepResult {
  std::map<CellKey, EvalResult> cells;
  std::map<CellKey, std::string> failures;  // reason per failed cell
  SweepMetadata metadata;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

struct SweepStats {
  std::size_t cells_total = 0;
  std::size_t cache_hits = 0;
  std::size_t transcriber_invocations = 0;  // external commands and mock calls
  std::size_t failures = 0;
};

struct SweepRun {
  SweepResult result;
  SweepStats stats;
};

struct SweepOptions {
  std::size_t workers = 1;
  // Keep the synthesized noisy audio under `audio_dir` instead of deleting it.
  bool keep_audio = false;
  std::filesystem::path audio_dir;
  // Scratch space for transcriber inputs/outputs; a fresh directory under the
  // system temp dir when empty.
  std::filesystem::path work_dir;
  double clip_limit = 1.0;
  WavEncoding encoding = WavEncoding::kFloat32;
};

// Hex digest naming the cache entry of one cell. `inputs_digest` summarizes
// the cell's inputs (reference notes, and the audio file for external
// systems); together with the other arguments it covers every parameter that
// determines the cell's result.
std::string cell_cache_key(const SystemSpec& system, std::string_view recording_id, double snr_db,
                           std::uint64_t master_seed, double tolerance_s,
                           const SweepOptions& options, std::uint64_t inputs_digest);

// Seed handed to the mock transcriber for one cell.
std::uint64_t mock_cell_seed(std::uint64_t noise_seed, std::string_view system_id);

// Evaluates every (system, recording, SNR level) cell: synthesize the noisy
// audio with the same seeds augment_corpus uses, run the system, score it
// against the recording's reference notes. Cells found in `cache_dir` (when
// non-empty) are reused; fresh results are written there atomically.
// Per-cell failures are collected in SweepResult::failures. The result does
// not depend on options.workers.
//
// Throws DomainError for an empty manifest, no systems, duplicate system ids
// or an invalid grid.
SweepRun run_sweep(const Manifest& manifest, const std::vector<SystemSpec>& systems,
                   const SnrGrid& grid, std::uint64_t master_seed, double tolerance_s,
                   const std::filesystem::path& cache_dir, const SweepOptions& options = {});

nlohmann::json sweep_to_json(const SweepResult& sweep, bool include_timestamps = false);
SweepResult sweep_from_json(const nlohmann::json& doc);

// Tidy CSV: system_id,recording_id,snr_db,tp,fp,fn,precision,recall,f1.
std::string sweep_to_csv(const SweepResult& sweep);
// Metadata is reconstructed from the cells (grid spans the observed levels).
SweepResult sweep_from_csv(std::string_view text);

void write_sweep(const SweepResult& sweep, const std::filesystem::path& json_path,
                 const std::filesystem::path& csv_path);
// Reads either format, chosen by extension (.json or .csv).
SweepResult read_sweep(const std::filesystem::path& path);

}  // namespace noisebench

#endif  // NOISEBENCH_SWEEP_H_
