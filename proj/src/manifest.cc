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

#include "noisebench/manifest.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "noisebench/error.h"
#include "noisebench/text.h"

namespace noisebench {
namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One manifest row before path resolution; `id` may be empty.
struct RawRow {
  std::string id;
  std::string filename;
  std::string audio;
  std::string midi;
  std::string split;
  std::size_t position;  // line (CSV) or element index (JSON)
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  return path.lexically_normal();
}

Manifest finish(const std::vector<RawRow>& rows, const std::filesystem::path& manifest_path,
                std::optional<Split> split_filter) {
  const auto base = manifest_path.parent_path();
  Manifest manifest;
  std::set<std::string> seen;
  for (const RawRow& row : rows) {
    const std::string where = " (manifest entry at " + std::to_string(row.position) + ")";
    if (row.audio.empty()) throw SchemaError("empty audio_filename" + where);
    if (row.midi.empty()) throw SchemaError("empty midi_filename" + where);
    Split split;
    try {
      split = parse_split(row.split);
    } catch (const SchemaError& e) {
      throw SchemaError(e.what() + where);
    }
    std::string id = !row.id.empty()         ? row.id
                     : !row.filename.empty() ? row.filename
                                             : std::filesystem::path(row.audio).stem().string();
    if (!seen.insert(id).second) throw SchemaError("duplicate id '" + id + "'" + where);
    if (split_filter && split != *split_filter) continue;
    manifest.records.push_back({std::move(id), resolve(base, row.audio),
                                resolve(base, row.midi), split});
  }
  return manifest;
}

std::vector<RawRow> rows_from_csv(const std::string& text) {
  const auto table = parse_csv(text);
  if (table.empty()) throw SchemaError("manifest CSV has no header row");
  const auto& header = table.front();
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col.emplace(std::string(trim(header[i])), i);
  for (const char* required : {"audio_filename", "midi_filename", "split"}) {
    if (!col.count(required)) {
      throw SchemaError(std::string("manifest is missing required column '") + required + "'");
    }
  }
  const auto get = [&](const std::vector<std::string>& row, const char* name) -> std::string {
    const auto it = col.find(name);
    if (it == col.end() || it->second >= row.size()) return {};
    return std::string(trim(row[it->second]));
  };
  std::vector<RawRow> rows;
  for (std::size_t r = 1; r < table.size(); ++r) {
    const auto& row = table[r];
    if (row.size() == 1 && trim(row[0]).empty()) continue;  // blank line
    rows.push_back({get(row, "id"), get(row, "filename"), get(row, "audio_filename"),
                    get(row, "midi_filename"), get(row, "split"), r + 1});
  }
  return rows;
}

std::string json_field(const nlohmann::json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return {};
  if (it->is_string()) return it->get<std::string>();
  return it->dump();
}

std::vector<RawRow> rows_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest JSON: ") + e.what(), e.byte);
  }
  if (doc.is_object() && doc.contains("records")) doc = doc["records"];

  std::vector<RawRow> rows;
  if (doc.is_object()) {
    // Column-oriented layout: {"audio_filename": {"0": ..., "1": ...}, ...}
    for (const char* required : {"audio_filename", "midi_filename", "split"}) {
      if (!doc.contains(required)) {
        throw SchemaError(std::string("manifest is missing required column '") + required + "'");
      }
    }
    std::vector<std::string> keys;
    for (const auto& [key, value] : doc["audio_filename"].items()) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto cell = [&](const char* name) -> std::string {
        if (!doc.contains(name)) return {};
        return json_field(doc[name], keys[i].c_str());
      };
      rows.push_back({cell("id"), cell("filename"), cell("audio_filename"),
                      cell("midi_filename"), cell("split"), i});
    }
    return rows;
  }
  if (!doc.is_array()) throw SchemaError("manifest JSON must be an array of records");
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    if (!obj.is_object()) throw SchemaError("manifest JSON element " + std::to_string(i) + " is not an object");
    for (const char* required : {"audio_filename", "midi_filename", "split"}) {
      if (!obj.contains(required)) {
        throw SchemaError(std::string("manifest is missing required column '") + required +
                          "' in element " + std::to_string(i));
      }
    }
    rows.push_back({json_field(obj, "id"), json_field(obj, "filename"),
                    json_field(obj, "audio_filename"), json_field(obj, "midi_filename"),
                    json_field(obj, "split"), i});
  }
  return rows;
}

}  // namespace

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation") return Split::kValidation;
  if (name == "test") return Split::kTest;
  throw SchemaError("unknown split '" + std::string(name) +
                    "' (expected train, validation or test)");
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return "test";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw ParseError("CSV: stray quote inside field", line);
        quoted = true;
        field_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        field_started = false;
        ++line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw ParseError("CSV: unterminated quoted field", line);
  if (field_started || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

Manifest load_manifest(const std::filesystem::path& path, std::optional<Split> split_filter) {
  const std::string text = read_text(path);
  const auto ext = path.extension().string();
  const bool is_json = ext == ".json" || ext == ".JSON";
  return finish(is_json ? rows_from_json(text) : rows_from_csv(text), path, split_filter);
}

void save_manifest_json(const Manifest& manifest, const std::filesystem::path& path) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : manifest.records) {
    doc.push_back({{"id", r.id},
                   {"audio_filename", r.audio_path.generic_string()},
                   {"midi_filename", r.midi_path.generic_string()},
                   {"split", std::string(to_string(r.split))}});
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

}  // namespace noisebench
