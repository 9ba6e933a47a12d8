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

#include "noisebench/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "noisebench/augment.h"
#include "noisebench/compare.h"
#include "noisebench/error.h"
#include "noisebench/manifest.h"
#include "noisebench/report.h"
#include "noisebench/stats.h"
#include "noisebench/sweep.h"
#include "noisebench/synthetic.h"
#include "noisebench/text.h"
#include "noisebench/transcriber.h"
#include "noisebench/wav.h"

namespace noisebench {
namespace {

namespace fs = std::filesystem;

// Converts library validation errors on user-supplied text into usage errors.
template <typename F>
auto parse_flag(const std::string& flag, F&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::optional<Split> split_filter(const std::string& text) {
  if (text == "all" || text.empty()) return std::nullopt;
  return parse_flag("--split", [&] { return parse_split(text); });
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::trunc | std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << text;
  if (!file) throw IoError("failed writing " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CommonAudio {
  double clip_limit = 1.0;
  std::string encoding = "float32";
};

void add_audio_flags(CLI::App* cmd, CommonAudio& a) {
  cmd->add_option("--clip-limit", a.clip_limit, "Hard-clip level (full scale = 1)")->capture_default_str();
  cmd->add_option("--encoding", a.encoding, "Output WAV encoding: float32 or pcm16")->capture_default_str();
}

// ---- inject --------------------------------------------------------------

struct InjectArgs {
  std::string in, out;
  double snr = 0.0;
  std::uint64_t seed = 0;
  CommonAudio audio;
};

int run_inject(const InjectArgs& a, std::ostream& out) {
  const auto encoding = parse_flag("--encoding", [&] { return parse_wav_encoding(a.audio.encoding); });
  if (!(a.audio.clip_limit > 0.0)) throw UsageError("--clip-limit must be positive");
  const fs::path in(a.in);
  const fs::path dest(a.out);
  const std::string id = in.stem().string();
  const AudioBuffer signal = read_wav(in);
  const std::uint64_t noise_seed = derive_noise_seed(a.seed, id, a.snr);
  const MixResult mixed = inject_noise(signal, a.snr, noise_seed, a.audio.clip_limit);
  write_wav(mixed.audio, dest, encoding);
  fs::path sidecar = dest;
  sidecar.replace_extension(".json");
  write_mix_sidecar(sidecar, id, mixed.metadata);
  out << "wrote " << dest.string() << " (achieved " << format_double(mixed.metadata.achieved_snr_db)
      << " dB, " << mixed.metadata.clip.clipped_sample_count << " clipped samples)\n";
  return kExitOk;
}

// ---- augment -------------------------------------------------------------

struct AugmentArgs {
  std::string manifest, split = "test", grid = "-6:45:3", out;
  std::string cnr, snr_range = "0:24";
  std::uint64_t seed = 0;
  std::size_t workers = 1, draws = 1;
  CommonAudio audio;
};

int run_augment(const AugmentArgs& a, std::ostream& out, std::ostream& err) {
  AugmentOptions options;
  options.encoding = parse_flag("--encoding", [&] { return parse_wav_encoding(a.audio.encoding); });
  options.clip_limit = a.audio.clip_limit;
  options.workers = std::max<std::size_t>(1, a.workers);
  if (!(options.clip_limit > 0.0)) throw UsageError("--clip-limit must be positive");
  const Manifest manifest = load_manifest(a.manifest, split_filter(a.split));

  std::vector<RecordError> errors;
  std::size_t written = 0;
  if (!a.cnr.empty()) {
    CnrPolicy policy;
    policy.cnr = parse_flag("--cnr", [&] { return parse_cnr(a.cnr); });
    const auto range = split(a.snr_range, ':');
    const auto lo = range.size() == 2 ? parse_double(range[0]) : std::nullopt;
    const auto hi = range.size() == 2 ? parse_double(range[1]) : std::nullopt;
    if (!lo || !hi) throw UsageError("--snr-range: expected lo:hi");
    policy.snr_lo_db = *lo;
    policy.snr_hi_db = *hi;
    policy.seed = a.seed;
    parse_flag("--snr-range", [&] { policy.validate(); });
    if (a.draws == 0) throw UsageError("--draws must be positive");
    const auto report = augment_corpus_cnr(manifest, policy, a.draws, a.out, options);
    written = report.files.size();
    errors = report.errors;
  } else {
    const SnrGrid grid = parse_flag("--grid", [&] { return parse_grid(a.grid); });
    const auto report = augment_corpus(manifest, grid, a.seed, a.out, options);
    written = report.files.size();
    errors = report.errors;
  }
  for (const auto& e : errors) err << "error: " << e.id << ": " << e.message << '\n';
  out << "wrote " << written << " files to " << a.out << "; " << errors.size() << " recordings failed\n";
  return errors.empty() ? kExitOk : kExitFailure;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string manifest, split = "test", grid = "-6:45:3", cache_dir, out, audio_dir;
  std::vector<std::string> systems;
  std::uint64_t seed = 0;
  double tolerance_s = kDefaultOnsetToleranceS;
  std::size_t workers = 1;
  bool keep_audio = false;
  CommonAudio audio;
};

int run_sweep_cmd(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const SnrGrid grid = parse_flag("--grid", [&] { return parse_grid(a.grid); });
  if (!(a.tolerance_s > 0.0)) throw UsageError("--tolerance-s must be positive");
  if (!(a.audio.clip_limit > 0.0)) throw UsageError("--clip-limit must be positive");
  std::vector<SystemSpec> systems;
  for (const auto& text : a.systems) systems.push_back(parse_flag("--system", [&] { return parse_system_spec(text); }));
  SweepOptions options;
  options.workers = std::max<std::size_t>(1, a.workers);
  options.keep_audio = a.keep_audio;
  options.clip_limit = a.audio.clip_limit;
  options.encoding = parse_flag("--encoding", [&] { return parse_wav_encoding(a.audio.encoding); });
  const fs::path out_dir(a.out);
  if (a.keep_audio) options.audio_dir = a.audio_dir.empty() ? out_dir / "audio" : fs::path(a.audio_dir);

  const Manifest manifest = load_manifest(a.manifest, split_filter(a.split));
  ensure_dir(out_dir);
  const std::string started = utc_now();
  SweepRun run = run_sweep(manifest, systems, grid, a.seed, a.tolerance_s, a.cache_dir, options);
  run.result.metadata.started_at = started;
  run.result.metadata.finished_at = utc_now();
  write_sweep(run.result, out_dir / "sweep.json", out_dir / "sweep.csv");

  nlohmann::json info = {{"started_at", run.result.metadata.started_at},
                         {"finished_at", run.result.metadata.finished_at},
                         {"cells_total", run.stats.cells_total},
                         {"cache_hits", run.stats.cache_hits},
                         {"transcriber_invocations", run.stats.transcriber_invocations},
                         {"failures", run.stats.failures},
                         {"workers", options.workers}};
  write_text(out_dir / "run_info.json", info.dump(2) + "\n");

  for (const auto& [key, reason] : run.result.failures) {
    err << "cell failed: " << key.system_id << '/' << key.recording_id << '/' << format_snr_level(key.snr_db)
        << ": " << reason << '\n';
  }
  out << run.stats.cells_total << " cells, " << run.stats.cache_hits << " from cache, " << run.stats.failures
      << " failed; results in " << out_dir.string() << '\n';
  return run.result.cells.empty() && run.stats.cells_total > 0 ? kExitFailure : kExitOk;
}

// ---- compare -------------------------------------------------------------

struct CompareArgs {
  std::string in, baseline, out, test = "paired";
  std::vector<std::string> variants;
  double alpha = 0.05;
};

int run_compare(const CompareArgs& a, std::ostream& out) {
  const TestKind kind = parse_flag("--test", [&] { return parse_test_kind(a.test); });
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  const SweepResult sweep = read_sweep(a.in);
  std::vector<std::string> variants = a.variants;
  if (variants.empty()) {
    std::vector<std::string> seen;
    for (const auto& [key, r] : sweep.cells) {
      if (key.system_id != a.baseline && std::find(seen.begin(), seen.end(), key.system_id) == seen.end()) {
        seen.push_back(key.system_id);
      }
    }
    variants = seen;
  }
  if (variants.empty()) throw UsageError("no variant systems to compare against '" + a.baseline + "'");
  for (const auto& id : variants) {
    if (id == a.baseline) throw UsageError("--variant '" + id + "' is the baseline");
  }
  const auto has_system = [&](const std::string& id) {
    return std::any_of(sweep.cells.begin(), sweep.cells.end(), [&](const auto& c) { return c.first.system_id == id; });
  };
  if (!has_system(a.baseline)) throw UsageError("--baseline '" + a.baseline + "' has no cells in " + a.in);
  for (const auto& id : variants) {
    if (!has_system(id)) throw UsageError("--variant '" + id + "' has no cells in " + a.in);
  }
  const SignificanceTable table = compare_systems(sweep, a.baseline, variants, a.alpha, kind);
  const std::string markdown = significance_markdown(table);
  if (!a.out.empty()) {
    const fs::path dir(a.out);
    ensure_dir(dir);
    write_text(dir / "significance.md", markdown);
    write_text(dir / "significance.csv", significance_csv(table));
    write_text(dir / "significance.json", significance_json(table).dump(2) + "\n");
  }
  out << markdown;
  return kExitOk;
}

// ---- report --------------------------------------------------------------

struct ReportArgs {
  std::string in, out, metric = "all", title;
};

void write_report(const SweepResult& sweep, const fs::path& dir, const std::vector<Metric>& metrics,
                  const std::string& title) {
  ensure_dir(dir);
  for (Metric m : metrics) {
    const auto series = curves_from_sweep(sweep, m);
    const std::string name(to_string(m));
    std::string y_label = m == Metric::kF1 ? "F1" : name;
    if (!y_label.empty()) y_label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(y_label[0])));
    render_snr_curves(series, dir / ("snr_curves_" + name + ".svg"), title, y_label);
    write_text(dir / ("curves_" + name + ".md"), curves_markdown(series));
    write_text(dir / ("curves_" + name + ".csv"), curves_csv(series));
  }
}

std::vector<Metric> metrics_flag(const std::string& text) {
  if (text == "all") return {std::begin(kAllMetrics), std::end(kAllMetrics)};
  return {parse_flag("--metric", [&] { return parse_metric(text); })};
}

int run_report(const ReportArgs& a, std::ostream& out) {
  const auto metrics = metrics_flag(a.metric);
  const SweepResult sweep = read_sweep(a.in);
  if (sweep.cells.empty()) throw UsageError("sweep result " + a.in + " has no cells to report");
  parse_flag("--in", [&] { write_report(sweep, a.out, metrics, a.title); });
  out << "report written to " << a.out << '\n';
  return kExitOk;
}

// ---- selftest ------------------------------------------------------------

struct SelftestArgs {
  std::string out = "noisebench-selftest";
  std::uint64_t seed = 2024;
  std::size_t recordings = 5, workers = 1;
};

int run_selftest(const SelftestArgs& a, std::ostream& out, std::ostream& err) {
  if (a.recordings < 2) throw UsageError("--recordings must be at least 2");
  const fs::path dir(a.out);
  ensure_dir(dir);
  const fs::path manifest_path = make_synthetic_corpus(dir / "corpus", a.recordings, a.seed);
  const Manifest manifest = load_manifest(manifest_path, Split::kTest);

  const MockParams baseline_params;
  MockParams robust_params;
  robust_params.snr0 = 0.0;
  const std::vector<SystemSpec> systems = {MockSpec{"mock", baseline_params}, MockSpec{"mock-robust", robust_params}};
  const SnrGrid grid;
  SweepOptions options;
  options.workers = std::max<std::size_t>(1, a.workers);
  const SweepRun run = run_sweep(manifest, systems, grid, a.seed, kDefaultOnsetToleranceS, {}, options);
  if (!run.result.failures.empty()) {
    for (const auto& [key, reason] : run.result.failures) err << "cell failed: " << key.recording_id << ": " << reason << '\n';
    return kExitFailure;
  }
  write_sweep(run.result, dir / "sweep.json", dir / "sweep.csv");

  auto series = curves_from_sweep(run.result, Metric::kF1);
  const PlotSeries expected = expected_mock_curve(baseline_params, grid, "mock (expected)");
  series.push_back(expected);
  render_snr_curves(series, dir / "snr_curves_f1.svg", "Mock transcriber F1 vs. SNR");
  write_text(dir / "curves_f1.md", curves_markdown(series));
  write_text(dir / "curves_f1.csv", curves_csv(series));

  const SignificanceTable table = compare_systems(run.result, "mock", {"mock-robust"}, 0.05, TestKind::kPaired);
  write_text(dir / "significance.md", significance_markdown(table));

  bool ok = true;
  for (std::size_t i = 1; i < expected.points.size(); ++i) {
    if (expected.points[i].mean_score < expected.points[i - 1].mean_score) {
      err << "expected mock F1 curve decreases at " << format_snr_level(expected.points[i].snr_db) << " dB\n";
      ok = false;
    }
  }
  // Pooled recall of the mock is binomial in the reference note count, with
  // success probability 1 - drop(snr); allow 4 binomial standard deviations.
  for (double level : snr_levels(grid)) {
    std::size_t kept = 0, total = 0;
    for (const auto& rec : manifest.records) {
      const auto it = run.result.cells.find(CellKey{"mock", rec.id, level});
      if (it == run.result.cells.end()) continue;
      kept += it->second.true_positives;
      total += it->second.true_positives + it->second.false_negatives;
    }
    const double keep = 1.0 - mock_drop_probability(baseline_params, level);
    const double recall = total == 0 ? 0.0 : static_cast<double>(kept) / static_cast<double>(total);
    const double bound = 4.0 * std::sqrt(keep * (1.0 - keep) / static_cast<double>(std::max<std::size_t>(total, 1))) + 0.01;
    if (total == 0 || std::fabs(recall - keep) > bound) {
      err << "empirical mock recall " << format_double(recall) << " at " << format_snr_level(level)
          << " dB is far from the expected " << format_double(keep) << '\n';
      ok = false;
    }
  }
  out << "selftest: " << manifest.records.size() << " recordings x " << snr_levels(grid).size() << " SNR levels x "
      << systems.size() << " systems; artifacts in " << dir.string() << '\n';
  out << curves_markdown(series);
  out << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

// Subcommand config files: `key = value` lines ('#'/';' comments, [section]
// headers ignored) become `--key value` flags inserted after the subcommand
// name, skipping keys the command line already sets. CLI11 only reads config
// files for the top-level app, hence this pre-pass.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::size_t sub = 0;
  while (sub < args.size() && !args[sub].empty() && args[sub][0] == '-') ++sub;
  if (sub == args.size()) return args;
  std::optional<std::string> path;
  std::set<std::string> given;
  for (std::size_t i = sub + 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const std::string name = a.substr(0, a.find('='));
    given.insert(name);
    if (name != "--config") continue;
    if (a.size() > name.size()) {
      path = a.substr(name.size() + 1);
    } else if (i + 1 < args.size()) {
      path = args[i + 1];
    } else {
      return args;  // let the parser report the missing value
    }
  }
  if (!path) return args;
  std::ifstream file(*path);
  if (!file) throw UsageError("--config: cannot read " + *path);
  std::vector<std::string> inserted;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const std::string t = std::string(trim(line));
    if (t.empty() || t[0] == '#' || t[0] == ';' || t[0] == '[') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError(*path + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key = "--" + std::string(trim(t.substr(0, eq)));
    std::string value(trim(t.substr(eq + 1)));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "--config" || given.count(key)) continue;
    if (key == "--keep-audio") {
      if (value == "true" || value == "1") inserted.push_back(key);
      continue;
    }
    inserted.push_back(key);
    inserted.push_back(value);
  }
  std::vector<std::string> out(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(sub) + 1);
  out.insert(out.end(), inserted.begin(), inserted.end());
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(sub) + 1, args.end());
  return out;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"noisebench: noise-robustness benchmarking for music transcription"};
  app.name("noisebench");
  app.require_subcommand(1);
  std::string config_file;  // consumed by expand_config; declared for --help

  InjectArgs inject;
  auto* c_inject = app.add_subcommand("inject", "Mix white noise into one WAV file at a target SNR");
  c_inject->add_option("--config", config_file, "key=value config file (flags win)");
  c_inject->add_option("--in", inject.in, "Input WAV")->required();
  c_inject->add_option("--out", inject.out, "Output WAV; a .json sidecar is written next to it")->required();
  c_inject->add_option("--snr", inject.snr, "Target SNR in dB")->required();
  c_inject->add_option("--seed", inject.seed, "Master seed")->capture_default_str();
  add_audio_flags(c_inject, inject.audio);

  AugmentArgs augment;
  auto* c_augment = app.add_subcommand("augment", "Noise-augment a corpus over an SNR grid or a CNR policy");
  c_augment->add_option("--config", config_file, "key=value config file (flags win)");
  c_augment->add_option("--manifest", augment.manifest, "Manifest CSV or JSON")->required();
  c_augment->add_option("--split", augment.split, "train, validation, test or all")->capture_default_str();
  c_augment->add_option("--grid", augment.grid, "SNR grid lo:hi:step (dB)")->capture_default_str();
  c_augment->add_option("--seed", augment.seed, "Master seed")->capture_default_str();
  c_augment->add_option("--out", augment.out, "Output directory")->required();
  c_augment->add_option("--workers", augment.workers, "Parallel workers")->capture_default_str();
  c_augment->add_option("--cnr", augment.cnr, "Clean-to-noise ratio (e.g. 0, 1/3, 1, 3, inf); enables draw mode");
  c_augment->add_option("--snr-range", augment.snr_range, "Noisy-draw SNR range lo:hi (dB)")->capture_default_str();
  c_augment->add_option("--draws", augment.draws, "Draws per recording in --cnr mode")->capture_default_str();
  add_audio_flags(c_augment, augment.audio);

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Evaluate systems on every (recording, SNR) cell");
  c_sweep->add_option("--config", config_file, "key=value config file (flags win)");
  c_sweep->add_option("--manifest", sweep.manifest, "Manifest CSV or JSON")->required();
  c_sweep->add_option("--split", sweep.split, "train, validation, test or all")->capture_default_str();
  c_sweep->add_option("--grid", sweep.grid, "SNR grid lo:hi:step (dB)")->capture_default_str();
  c_sweep->add_option("--seed", sweep.seed, "Master seed")->capture_default_str();
  c_sweep->add_option("--tolerance-s", sweep.tolerance_s, "Onset tolerance in seconds")->capture_default_str();
  c_sweep->add_option("--system", sweep.systems,
                      "System spec, repeatable: id[:midi|:tsv][@timeout]=command with {input} and {output}, "
                      "or id=builtin:mock[?p0=..&k=..&snr0=..&jitter_s=..]")
      ->required();
  c_sweep->add_option("--cache-dir", sweep.cache_dir, "Per-cell result cache directory");
  c_sweep->add_option("--out", sweep.out, "Output directory (sweep.json, sweep.csv, run_info.json)")->required();
  c_sweep->add_option("--workers", sweep.workers, "Parallel workers")->capture_default_str();
  c_sweep->add_flag("--keep-audio", sweep.keep_audio, "Keep the synthesized noisy audio");
  c_sweep->add_option("--audio-dir", sweep.audio_dir, "Where --keep-audio stores audio (default OUT/audio)");
  add_audio_flags(c_sweep, sweep.audio);

  CompareArgs compare;
  auto* c_compare = app.add_subcommand("compare", "Significance of variant-vs-baseline differences per SNR");
  c_compare->add_option("--config", config_file, "key=value config file (flags win)");
  c_compare->add_option("--in", compare.in, "sweep.json or sweep.csv")->required();
  c_compare->add_option("--baseline", compare.baseline, "Baseline system id")->required();
  c_compare->add_option("--variant", compare.variants, "Variant system id, repeatable (default: all others)");
  c_compare->add_option("--alpha", compare.alpha, "Significance level")->capture_default_str();
  c_compare->add_option("--test", compare.test, "paired or welch")->capture_default_str();
  c_compare->add_option("--out", compare.out, "Directory for significance.{md,csv,json}");

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "SVG curves and mean tables from a sweep result");
  c_report->add_option("--config", config_file, "key=value config file (flags win)");
  c_report->add_option("--in", report.in, "sweep.json or sweep.csv")->required();
  c_report->add_option("--out", report.out, "Output directory")->required();
  c_report->add_option("--metric", report.metric, "precision, recall, f1 or all")->capture_default_str();
  c_report->add_option("--title", report.title, "Chart title");

  SelftestArgs selftest;
  auto* c_selftest = app.add_subcommand("selftest", "End-to-end demo on a synthetic corpus with mock transcribers");
  c_selftest->add_option("--config", config_file, "key=value config file (flags win)");
  c_selftest->add_option("--out", selftest.out, "Output directory")->capture_default_str();
  c_selftest->add_option("--seed", selftest.seed, "Master seed")->capture_default_str();
  c_selftest->add_option("--recordings", selftest.recordings, "Synthetic recordings")->capture_default_str();
  c_selftest->add_option("--workers", selftest.workers, "Parallel workers")->capture_default_str();

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    const auto selected = app.get_subcommands();
    err << (selected.empty() ? app.help() : selected.front()->help());
    return kExitUsage;
  }

  try {
    if (c_inject->parsed()) return run_inject(inject, out);
    if (c_augment->parsed()) return run_augment(augment, out, err);
    if (c_sweep->parsed()) return run_sweep_cmd(sweep, out, err);
    if (c_compare->parsed()) return run_compare(compare, out);
    if (c_report->parsed()) return run_report(report, out);
    if (c_selftest->parsed()) return run_selftest(selftest, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace noisebench
