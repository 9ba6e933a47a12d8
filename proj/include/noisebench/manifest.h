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

#ifndef NOISEBENCH_MANIFEST_H_
#define NOISEBENCH_MANIFEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noisebench {

enum class Split { kTrain, kValidation, kTest };

Split parse_split(std::string_view name);
std::string_view to_string(Split split);

struct ManifestRecord {
  std::string id;
  std::filesystem::path audio_path;
  std::filesystem::path midi_path;
  Split split = Split::kTest;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct Manifest {
  std::vector<ManifestRecord> records;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

// Loads a corpus manifest from CSV (header row required) or a JSON array of
// objects, chosen by file extension. Recognized columns: `id` or `filename`
// (optional; the audio file stem is used when both are absent),
// `audio_filename`, `midi_filename` and `split`. Relative paths resolve
// against the manifest's directory. MAESTRO metadata CSVs load as-is.
//
// Throws SchemaError for a missing column or duplicate id, ParseError for
// malformed CSV/JSON and IoError when the file cannot be read.
Manifest load_manifest(const std::filesystem::path& path,
                       std::optional<Split> split_filter = std::nullopt);

// Writes the JSON encoding accepted by load_manifest. Paths are written as
// given.
void save_manifest_json(const Manifest& manifest,
                        const std::filesystem::path& path);

// Splits one CSV document into rows of fields (RFC 4180 quoting, CRLF or LF).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace noisebench

#endif  // NOISEBENCH_MANIFEST_H_
