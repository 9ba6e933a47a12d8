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

#include "noisebench/sweep.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "noisebench/error.h"
#include "noisebench/parallel.h"
#include "noisebench/random.h"
#include "noisebench/text.h"
#include "noisebench/wav.h"

namespace noisebench {
namespace {

constexpr int kCacheVersion = 1;

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
  return out;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t notes_digest(const NoteList& notes) {
  Fnv1a64 h;
  h.u64(notes.size());
  for (const auto& n : notes) {
    h.u64(std::bit_cast<std::uint64_t>(n.onset_s));
    h.u64(std::bit_cast<std::uint64_t>(n.offset_s));
    h.u64(static_cast<std::uint64_t>(n.pitch));
  }
  return h.digest();
}

// Size and modification time: enough to notice a replaced audio file
// without hashing its contents.
std::uint64_t file_stamp(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  const auto mtime = std::filesystem::last_write_time(path, ec);
  return Fnv1a64()
      .u64(ec ? 0 : size)
      .u64(static_cast<std::uint64_t>(mtime.time_since_epoch().count()))
      .digest();
}

bool is_external(const SystemSpec& spec) { return std::holds_alternative<TranscriberSpec>(spec); }

std::optional<EvalResult> load_cached(const std::filesystem::path& file, const CellKey& key,
                                      std::uint64_t master_seed) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.at("version").get<int>() != kCacheVersion) return std::nullopt;
    if (doc.at("system_id").get<std::string>() != key.system_id ||
        doc.at("recording_id").get<std::string>() != key.recording_id ||
        doc.at("snr_db").get<double>() != key.snr_db ||
        doc.at("master_seed").get<std::uint64_t>() != master_seed) {
      return std::nullopt;
    }
    return doc.at("result").get<EvalResult>();
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void store_cached(const std::filesystem::path& file, const CellKey& key, std::uint64_t master_seed,
                  double tolerance_s, const EvalResult& result) {
  nlohmann::json doc{{"version", kCacheVersion},
                     {"system_id", key.system_id},
                     {"recording_id", key.recording_id},
                     {"snr_db", key.snr_db},
                     {"master_seed", master_seed},
                     {"tolerance_s", tolerance_s},
                     {"result", result}};
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  auto tmp = file;
  tmp += ".tmp-" + std::to_string(::getpid()) + "-" + tid.str();
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write cache entry " + tmp.string());
    out << doc.dump() << '\n';
    if (!out) throw IoError("cannot write cache entry " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move cache entry into place: " + file.string());
  }
}

std::filesystem::path fresh_work_dir() {
  const auto salt = mix64(static_cast<std::uint64_t>(
                              std::chrono::steady_clock::now().time_since_epoch().count()) ^
                          (static_cast<std::uint64_t>(::getpid()) << 32));
  return std::filesystem::temp_directory_path() / ("noisebench-" + hex64(salt));
}

SnrGrid grid_from_levels(const std::set<double>& levels) {
  SnrGrid grid{0.0, 0.0, 1.0};
  if (levels.empty()) return grid;
  grid.lo_db = *levels.begin();
  grid.hi_db = *levels.rbegin();
  double step = 0.0;
  for (auto it = std::next(levels.begin()); it != levels.end(); ++it) {
    const double d = *it - *std::prev(it);
    if (step == 0.0 || d < step) step = d;
  }
  grid.step_db = step > 0.0 ? step : 1.0;
  return grid;
}

}  // namespace

std::string cell_cache_key(const SystemSpec& system, std::string_view recording_id, double snr_db,
                           std::uint64_t master_seed, double tolerance_s,
                           const SweepOptions& options, std::uint64_t inputs_digest) {
  Fnv1a64 h;
  h.str("noisebench-cell").u64(kCacheVersion);
  h.str(system_id(system)).str(system_fingerprint(system));
  h.str(recording_id).str(format_double(snr_db)).u64(master_seed).str(format_double(tolerance_s));
  if (is_external(system)) {
    h.str(format_double(options.clip_limit));
    h.u64(options.encoding == WavEncoding::kFloat32 ? 32 : 16);
  }
  h.u64(inputs_digest);
  return hex64(h.digest());
}

std::uint64_t mock_cell_seed(std::uint64_t noise_seed, std::string_view system_id) {
  return Fnv1a64().u64(noise_seed).str(system_id).digest();
}

SweepRun run_sweep(const Manifest& manifest, const std::vector<SystemSpec>& systems,
                   const SnrGrid& grid, std::uint64_t master_seed, double tolerance_s,
                   const std::filesystem::path& cache_dir, const SweepOptions& options) {
  if (manifest.records.empty()) throw DomainError("sweep needs at least one recording");
  if (systems.empty()) throw DomainError("sweep needs at least one system");
  if (!(tolerance_s > 0.0)) throw DomainError("onset tolerance must be positive");
  const auto levels = snr_levels(grid);
  {
    std::set<std::string> ids;
    for (const auto& s : systems) {
      if (!ids.insert(system_id(s)).second) throw DomainError("duplicate system id '" + system_id(s) + "'");
      if (const auto* ext = std::get_if<TranscriberSpec>(&s)) ext->validate();
      if (const auto* mock = std::get_if<MockSpec>(&s)) mock->params.validate();
    }
    std::set<std::string> rec_ids;
    for (const auto& r : manifest.records) {
      if (!rec_ids.insert(r.id).second) throw DomainError("duplicate recording id '" + r.id + "'");
    }
  }

  SweepResult result;
  result.metadata.master_seed = master_seed;
  result.metadata.grid = grid;
  result.metadata.tolerance_s = tolerance_s;
  for (const auto& s : systems) result.metadata.systems.push_back(system_id(s));
  result.metadata.started_at = utc_now();

  if (!cache_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (ec) throw IoError("cannot create cache directory " + cache_dir.string() + ": " + ec.message());
  }
  const bool any_external = std::any_of(systems.begin(), systems.end(), is_external);
  const bool own_work_dir = options.work_dir.empty();
  const auto work_root = own_work_dir ? fresh_work_dir() : options.work_dir;
  if (options.keep_audio) {
    std::error_code ec;
    std::filesystem::create_directories(options.audio_dir, ec);
    if (ec) throw IoError("cannot create audio directory " + options.audio_dir.string());
  }

  std::vector<const ManifestRecord*> records;
  for (const auto& r : manifest.records) records.push_back(&r);
  std::sort(records.begin(), records.end(), [](auto* a, auto* b) { return a->id < b->id; });

  struct Outcome {
    CellKey key;
    std::optional<EvalResult> result;
    std::string failure;
    bool cached = false;
  };
  std::vector<std::vector<Outcome>> outcomes(records.size());
  std::atomic<std::size_t> invocations{0};

  parallel_for(records.size(), options.workers, [&](std::size_t r) {
    const ManifestRecord& rec = *records[r];
    auto& out = outcomes[r];
    const auto fail_all = [&](const std::string& why) {
      out.clear();
      for (double level : levels) {
        for (const auto& s : systems) out.push_back({{system_id(s), rec.id, level}, std::nullopt, why, false});
      }
    };

    NoteList reference;
    try {
      reference = read_notes(rec.midi_path);
    } catch (const Error& e) {
      fail_all(std::string("reference: ") + e.what());
      return;
    }
    const std::uint64_t ref_digest = notes_digest(reference);
    const std::uint64_t audio_digest = any_external ? file_stamp(rec.audio_path) : 0;

    std::optional<AudioBuffer> source;
    std::optional<std::string> source_error;
    const auto work_dir = work_root / std::to_string(r);

    for (double level : levels) {
      const std::uint64_t noise_seed = derive_noise_seed(master_seed, rec.id, level);
      std::optional<std::filesystem::path> noisy_path;
      std::optional<std::string> noisy_error;

      const auto ensure_noisy = [&]() -> const std::filesystem::path& {
        if (noisy_path) return *noisy_path;
        if (noisy_error) throw Error(*noisy_error);
        try {
          if (!source && !source_error) {
            try {
              source = read_wav(rec.audio_path);
            } catch (const Error& e) {
              source_error = std::string("audio: ") + e.what();
            }
          }
          if (source_error) throw Error(*source_error);
          const MixResult mixed = inject_noise(*source, level, noise_seed, options.clip_limit);
          const std::string stem = augmented_stem(rec.id, level);
          const auto dir = options.keep_audio ? options.audio_dir : work_dir;
          std::error_code ec;
          std::filesystem::create_directories(dir, ec);
          const auto path = dir / (stem + ".wav");
          write_wav(mixed.audio, path, options.encoding);
          if (options.keep_audio) write_mix_sidecar(dir / (stem + ".json"), rec.id, mixed.metadata);
          noisy_path = path;
          return *noisy_path;
        } catch (const Error& e) {
          noisy_error = e.what();
          throw;
        }
      };

      for (const auto& system : systems) {
        CellKey key{system_id(system), rec.id, level};
        const std::uint64_t digest = Fnv1a64().u64(ref_digest).u64(is_external(system) ? audio_digest : 0).digest();
        std::filesystem::path cache_file;
        if (!cache_dir.empty()) {
          cache_file = cache_dir / (cell_cache_key(system, rec.id, level, master_seed, tolerance_s,
                                                   options, digest) +
                                    ".json");
          if (auto hit = load_cached(cache_file, key, master_seed)) {
            out.push_back({std::move(key), *hit, {}, true});
            continue;
          }
        }
        try {
          NoteList estimate;
          if (const auto* mock = std::get_if<MockSpec>(&system)) {
            ++invocations;
            estimate = mock_transcriber(reference, level, mock->params,
                                        mock_cell_seed(noise_seed, mock->system_id));
          } else {
            const auto& ext = std::get<TranscriberSpec>(system);
            const auto& audio = ensure_noisy();
            ++invocations;
            estimate = run_transcriber(ext, audio, work_dir);
          }
          const EvalResult eval = evaluate(reference, estimate, tolerance_s);
          if (!cache_file.empty()) store_cached(cache_file, key, master_seed, tolerance_s, eval);
          out.push_back({std::move(key), eval, {}, false});
        } catch (const Error& e) {
          std::string why = e.what();
          if (const auto* te = dynamic_cast<const TranscriberError*>(&e); te && !te->stderr_text().empty()) {
            why += ": " + std::string(trim(te->stderr_text()));
          }
          out.push_back({std::move(key), std::nullopt, std::move(why), false});
        }
      }
      if (noisy_path && !options.keep_audio) {
        std::error_code ec;
        std::filesystem::remove(*noisy_path, ec);
      }
    }
  });

  if (own_work_dir) {
    std::error_code ec;
    std::filesystem::remove_all(work_root, ec);
  }

  SweepStats stats;
  stats.transcriber_invocations = invocations.load();
  for (auto& per_record : outcomes) {
    for (auto& o : per_record) {
      ++stats.cells_total;
      if (o.cached) ++stats.cache_hits;
      if (o.result) {
        result.cells.emplace(std::move(o.key), *o.result);
      } else {
        ++stats.failures;
        result.failures.emplace(std::move(o.key), std::move(o.failure));
      }
    }
  }
  result.metadata.finished_at = utc_now();
  return {std::move(result), stats};
}

nlohmann::json sweep_to_json(const SweepResult& sweep, bool include_timestamps) {
  const auto& m = sweep.metadata;
  nlohmann::json meta{{"master_seed", m.master_seed},
                      {"grid", {{"lo_db", m.grid.lo_db}, {"hi_db", m.grid.hi_db}, {"step_db", m.grid.step_db}}},
                      {"tolerance_s", m.tolerance_s},
                      {"systems", m.systems}};
  if (include_timestamps) meta["timestamps"] = {{"started_at", m.started_at}, {"finished_at", m.finished_at}};

  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [key, r] : sweep.cells) {
    nlohmann::json cell{{"system_id", key.system_id}, {"recording_id", key.recording_id}, {"snr_db", key.snr_db}};
    cell.update(nlohmann::json(r));
    cells.push_back(std::move(cell));
  }
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& [key, why] : sweep.failures) {
    failures.push_back({{"system_id", key.system_id},
                        {"recording_id", key.recording_id},
                        {"snr_db", key.snr_db},
                        {"reason", why}});
  }
  return {{"format", "noisebench-sweep"}, {"version", 1}, {"metadata", meta}, {"cells", cells}, {"failures", failures}};
}

SweepResult sweep_from_json(const nlohmann::json& doc) {
  SweepResult sweep;
  try {
    if (doc.value("format", std::string()) != "noisebench-sweep") {
      throw SchemaError("not a sweep result document");
    }
    const auto& meta = doc.at("metadata");
    auto& m = sweep.metadata;
    meta.at("master_seed").get_to(m.master_seed);
    meta.at("grid").at("lo_db").get_to(m.grid.lo_db);
    meta.at("grid").at("hi_db").get_to(m.grid.hi_db);
    meta.at("grid").at("step_db").get_to(m.grid.step_db);
    meta.at("tolerance_s").get_to(m.tolerance_s);
    meta.at("systems").get_to(m.systems);
    if (meta.contains("timestamps")) {
      m.started_at = meta["timestamps"].value("started_at", "");
      m.finished_at = meta["timestamps"].value("finished_at", "");
    }
    for (const auto& cell : doc.at("cells")) {
      CellKey key{cell.at("system_id").get<std::string>(), cell.at("recording_id").get<std::string>(),
                  cell.at("snr_db").get<double>()};
      sweep.cells.emplace(std::move(key), cell.get<EvalResult>());
    }
    if (doc.contains("failures")) {
      for (const auto& f : doc["failures"]) {
        CellKey key{f.at("system_id").get<std::string>(), f.at("recording_id").get<std::string>(),
                    f.at("snr_db").get<double>()};
        sweep.failures.emplace(std::move(key), f.at("reason").get<std::string>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed sweep result: ") + e.what());
  }
  return sweep;
}

std::string sweep_to_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "system_id,recording_id,snr_db,tp,fp,fn,precision,recall,f1\n";
  const auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  for (const auto& [key, r] : sweep.cells) {
    out << field(key.system_id) << ',' << field(key.recording_id) << ',' << format_double(key.snr_db) << ','
        << r.true_positives << ',' << r.false_positives << ',' << r.false_negatives << ','
        << format_double(r.precision) << ',' << format_double(r.recall) << ',' << format_double(r.f1) << '\n';
  }
  return out.str();
}

SweepResult sweep_from_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw SchemaError("sweep CSV has no header");
  static const std::vector<std::string> kHeader = {"system_id", "recording_id", "snr_db", "tp", "fp",
                                                   "fn",        "precision",    "recall", "f1"};
  if (rows.front() != kHeader) throw SchemaError("sweep CSV header does not match the tidy schema");
  SweepResult sweep;
  std::set<double> levels;
  std::set<std::string> systems;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != kHeader.size()) {
      throw ParseError("sweep CSV row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) + " fields",
                       i + 1);
    }
    const auto num = [&](std::size_t c) {
      const auto v = parse_double(row[c]);
      if (!v) throw ParseError("sweep CSV row " + std::to_string(i + 1) + ": bad number '" + row[c] + "'", i + 1);
      return *v;
    };
    const auto count = [&](std::size_t c) {
      const auto v = parse_int(row[c]);
      if (!v || *v < 0) throw ParseError("sweep CSV row " + std::to_string(i + 1) + ": bad count '" + row[c] + "'", i + 1);
      return static_cast<std::size_t>(*v);
    };
    EvalResult r;
    r.true_positives = count(3);
    r.false_positives = count(4);
    r.false_negatives = count(5);
    r.precision = num(6);
    r.recall = num(7);
    r.f1 = num(8);
    const double snr = num(2);
    levels.insert(snr);
    if (systems.insert(row[0]).second) sweep.metadata.systems.push_back(row[0]);
    sweep.cells.emplace(CellKey{row[0], row[1], snr}, r);
  }
  sweep.metadata.grid = grid_from_levels(levels);
  return sweep;
}

void write_sweep(const SweepResult& sweep, const std::filesystem::path& json_path,
                 const std::filesystem::path& csv_path) {
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + json_path.string() + " for writing");
    out << sweep_to_json(sweep).dump(2) << '\n';
    if (!out) throw IoError("failed writing " + json_path.string());
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot open " + csv_path.string() + " for writing");
    out << sweep_to_csv(sweep);
    if (!out) throw IoError("failed writing " + csv_path.string());
  }
}

SweepResult read_sweep(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (path.extension() == ".csv") return sweep_from_csv(text);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
  return sweep_from_json(doc);
}

}  // namespace noisebench
