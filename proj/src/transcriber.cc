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

#include "noisebench/transcriber.h"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "noisebench/error.h"
#include "noisebench/midi.h"
#include "noisebench/random.h"
#include "noisebench/text.h"

namespace noisebench {
namespace {

constexpr std::string_view kInput = "{input}";
constexpr std::string_view kOutput = "{output}";
constexpr std::string_view kMockPrefix = "builtin:mock";

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string replace_once(std::string text, std::string_view needle, const std::string& value) {
  const auto pos = text.find(needle);
  text.replace(pos, needle.size(), value);
  return text;
}

std::string read_file_tail(const std::filesystem::path& path, std::size_t max_bytes = 4096) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  if (s.size() > max_bytes) s = "..." + s.substr(s.size() - max_bytes);
  return s;
}

MockParams parse_mock_params(std::string_view query) {
  MockParams params;
  if (query.empty()) return params;
  for (auto kv : split(query, '&')) {
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) throw DomainError("mock parameter '" + std::string(kv) + "' lacks '='");
    const auto key = trim(kv.substr(0, eq));
    const auto value = parse_double(kv.substr(eq + 1));
    if (!value) throw DomainError("mock parameter '" + std::string(key) + "' is not a number");
    if (key == "p0") {
      params.p0 = *value;
    } else if (key == "k") {
      params.k = *value;
    } else if (key == "snr0") {
      params.snr0 = *value;
    } else if (key == "jitter_s") {
      params.jitter_s = *value;
    } else {
      throw DomainError("unknown mock parameter '" + std::string(key) + "'");
    }
  }
  params.validate();
  return params;
}

}  // namespace

void TranscriberSpec::validate() const {
  if (system_id.empty()) throw DomainError("transcriber system id is empty");
  if (count_occurrences(command_template, kInput) != 1 ||
      count_occurrences(command_template, kOutput) != 1) {
    throw DomainError("command template for '" + system_id +
                      "' must contain {input} and {output} exactly once");
  }
  if (!(timeout_s > 0.0)) throw DomainError("transcriber timeout must be positive");
}

void MockParams::validate() const {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("mock p0 must lie in [0, 1]");
  if (!(k > 0.0)) throw DomainError("mock k must be positive");
  if (!std::isfinite(snr0)) throw DomainError("mock snr0 must be finite");
  if (!(jitter_s >= 0.0) || !std::isfinite(jitter_s)) throw DomainError("mock jitter_s must be >= 0");
}

const std::string& system_id(const SystemSpec& spec) {
  return std::visit([](const auto& s) -> const std::string& { return s.system_id; }, spec);
}

std::string system_fingerprint(const SystemSpec& spec) {
  if (const auto* mock = std::get_if<MockSpec>(&spec)) {
    const auto& p = mock->params;
    return "mock:p0=" + format_double(p.p0) + ";k=" + format_double(p.k) +
           ";snr0=" + format_double(p.snr0) + ";jitter_s=" + format_double(p.jitter_s);
  }
  const auto& ext = std::get<TranscriberSpec>(spec);
  return std::string("cmd:") + (ext.output_format == NoteFormat::kMidi ? "midi:" : "tsv:") +
         ext.command_template;
}

SystemSpec parse_system_spec(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw DomainError("system must look like id=command, got '" + std::string(text) + "'");
  }
  std::string_view head = trim(text.substr(0, eq));
  const std::string command(trim(text.substr(eq + 1)));

  double timeout = 600.0;
  if (const auto at = head.find('@'); at != std::string_view::npos) {
    const auto t = parse_double(head.substr(at + 1));
    if (!t || !(*t > 0.0)) throw DomainError("bad timeout in system spec '" + std::string(text) + "'");
    timeout = *t;
    head = head.substr(0, at);
  }
  NoteFormat format = NoteFormat::kTsv;
  if (const auto colon = head.find(':'); colon != std::string_view::npos) {
    const auto fmt = head.substr(colon + 1);
    if (fmt == "midi" || fmt == "mid") {
      format = NoteFormat::kMidi;
    } else if (fmt != "tsv") {
      throw DomainError("unknown output format '" + std::string(fmt) + "' (expected midi or tsv)");
    }
    head = head.substr(0, colon);
  }
  std::string id(head);
  if (id.empty()) throw DomainError("system id is empty in '" + std::string(text) + "'");

  if (command.rfind(kMockPrefix, 0) == 0) {
    std::string_view rest = std::string_view(command).substr(kMockPrefix.size());
    if (!rest.empty() && rest.front() != '?') throw DomainError("malformed builtin mock spec '" + command + "'");
    if (!rest.empty()) rest.remove_prefix(1);
    return MockSpec{std::move(id), parse_mock_params(rest)};
  }
  TranscriberSpec spec{std::move(id), command, format, timeout};
  spec.validate();
  return spec;
}

double mock_drop_probability(const MockParams& params, double snr_db) {
  const double z = -params.k * (snr_db - params.snr0);
  const double sigmoid = 1.0 / (1.0 + std::exp(-z));
  return params.p0 + (1.0 - params.p0) * sigmoid;
}

NoteList mock_transcriber(const NoteList& reference, double snr_db, const MockParams& params,
                          std::uint64_t seed) {
  params.validate();
  const double drop = mock_drop_probability(params, snr_db);
  std::vector<NoteEvent> kept;
  kept.reserve(reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (uniform_at(seed, 2 * i) < drop) continue;
    NoteEvent note = reference[i];
    if (params.jitter_s > 0.0) {
      const double shift = (2.0 * uniform_at(seed, 2 * i + 1) - 1.0) * params.jitter_s;
      const double onset = std::max(0.0, note.onset_s + shift);
      note.offset_s += onset - note.onset_s;
      note.onset_s = onset;
    }
    kept.push_back(note);
  }
  return NoteList(std::move(kept));
}

NoteList run_transcriber(const TranscriberSpec& spec, const std::filesystem::path& audio_path,
                         const std::filesystem::path& work_dir) {
  spec.validate();
  if (!std::filesystem::exists(audio_path)) {
    throw IoError("transcriber input " + audio_path.string() + " does not exist");
  }
  std::error_code ec;
  std::filesystem::create_directories(work_dir, ec);
  if (ec) throw IoError("cannot create " + work_dir.string() + ": " + ec.message());

  const std::string base = audio_path.stem().string() + "." + spec.system_id;
  const auto output = work_dir / (base + (spec.output_format == NoteFormat::kMidi ? ".mid" : ".tsv"));
  const auto stderr_path = work_dir / (base + ".stderr");
  std::filesystem::remove(output, ec);

  std::string command = replace_once(spec.command_template, kInput, shell_quote(audio_path.string()));
  command = replace_once(std::move(command), kOutput, shell_quote(output.string()));
  const std::string stderr_str = stderr_path.string();

  const pid_t pid = fork();
  if (pid < 0) throw TranscriberError("fork failed for system '" + spec.system_id + "'", {});
  if (pid == 0) {
    setpgid(0, 0);
    const int err = open(stderr_str.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    const int null = open("/dev/null", O_RDWR);
    if (null >= 0) {
      dup2(null, STDIN_FILENO);
      dup2(null, STDOUT_FILENO);
    }
    if (err >= 0) dup2(err, STDERR_FILENO);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(spec.timeout_s));
  auto backoff = std::chrono::milliseconds(1);
  int status = 0;
  while (true) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) {
      throw TranscriberError("waitpid failed for system '" + spec.system_id + "'", {});
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
      throw TimeoutError("system '" + spec.system_id + "' exceeded its " +
                         format_double(spec.timeout_s) + " s timeout on " + audio_path.string());
    }
    std::this_thread::sleep_for(backoff);
    backoff = std::min(backoff * 2, std::chrono::milliseconds(50));
  }

  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const std::string why = WIFEXITED(status) ? "exited with status " + std::to_string(WEXITSTATUS(status))
                                              : "was killed by signal " + std::to_string(WTERMSIG(status));
    throw TranscriberError("system '" + spec.system_id + "' " + why, read_file_tail(stderr_path));
  }
  if (!std::filesystem::exists(output)) {
    throw TranscriberError("system '" + spec.system_id + "' produced no output file " + output.string(),
                           read_file_tail(stderr_path));
  }
  NoteList notes = spec.output_format == NoteFormat::kMidi ? read_midi(output) : read_notes_tsv(output);
  return notes;
}

}  // namespace noisebench
