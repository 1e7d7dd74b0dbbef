// Copyright 2026 The arcorpus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arcorpus/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "arcorpus/errors.hpp"
#include "json.hpp"

namespace arcorpus {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(SourceFormat f) {
  switch (f) {
    case SourceFormat::Plain: return "plain";
    case SourceFormat::DocPerBlock: return "doc-per-block";
    case SourceFormat::Jsonl: return "jsonl";
  }
  return "plain";
}

namespace {

std::string required_string(const json& obj, const char* key, size_t index) {
  const auto where = "sources[" + std::to_string(index) + "]";
  if (!obj.contains(key)) throw SchemaError(where + ": missing '" + key + "'");
  const json& v = obj[key];
  if (!v.is_string()) throw SchemaError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

SourceManifest parse_manifest(std::string_view json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("sources") || !root["sources"].is_array()) {
    throw SchemaError("manifest must be an object with a 'sources' array");
  }
  SourceManifest manifest;
  std::set<std::string> names;
  size_t index = 0;
  for (const json& s : root["sources"]) {
    const auto where = "sources[" + std::to_string(index) + "]";
    if (!s.is_object()) throw SchemaError(where + " must be an object");
    SourceSpec spec;
    spec.name = required_string(s, "name", index);
    if (spec.name.empty() || spec.name.find_first_of("/\\") != std::string::npos ||
        spec.name == "." || spec.name == "..") {
      throw SchemaError(where + ": name must be a non-empty file-name-safe string");
    }
    if (!names.insert(spec.name).second) throw DuplicateSource("duplicate source name '" + spec.name + "'");

    const std::string format = required_string(s, "format", index);
    if (format == "plain") {
      spec.format = SourceFormat::Plain;
    } else if (format == "doc-per-block") {
      spec.format = SourceFormat::DocPerBlock;
    } else if (format == "jsonl") {
      spec.format = SourceFormat::Jsonl;
    } else {
      throw UnknownFormat(where + ": unknown format '" + format + "'");
    }
    spec.dialect = required_string(s, "dialect", index);
    spec.domain = required_string(s, "domain", index);

    std::vector<std::string> paths;
    if (s.contains("paths")) {
      const json& p = s["paths"];
      if (!p.is_array() || p.empty()) throw SchemaError(where + ": 'paths' must be a non-empty array");
      for (const json& e : p) {
        if (!e.is_string()) throw SchemaError(where + ": 'paths' entries must be strings");
        paths.push_back(e.get<std::string>());
      }
    } else if (s.contains("path")) {
      paths.push_back(required_string(s, "path", index));
    } else {
      throw SchemaError(where + ": missing 'paths'");
    }
    for (const auto& p : paths) {
      fs::path path(p);
      spec.paths.push_back(path.is_relative() && !base_dir.empty() ? base_dir / path : path);
    }
    for (const auto& [key, _] : s.items()) {
      if (key != "name" && key != "paths" && key != "path" && key != "format" && key != "dialect" &&
          key != "domain") {
        throw SchemaError(where + ": unknown key '" + key + "'");
      }
    }
    manifest.sources.push_back(std::move(spec));
    ++index;
  }
  return manifest;
}

SourceManifest load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

namespace {

Document make_doc(const SourceSpec& source, std::string id, std::string text) {
  Document d;
  d.id = std::move(id);
  d.source = source.name;
  d.text = std::move(text);
  d.meta["dialect"] = source.dialect;
  d.meta["domain"] = source.domain;
  return d;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

void read_source(const SourceSpec& source, const std::function<void(Document&&)>& on_document,
                 const std::function<void(const std::string&)>& on_error) {
  for (const auto& path : source.paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    const std::string file = path.filename().string();

    switch (source.format) {
      case SourceFormat::Plain: {
        std::ostringstream buf;
        buf << in.rdbuf();
        on_document(make_doc(source, file, buf.str()));
        break;
      }
      case SourceFormat::DocPerBlock: {
        std::string line;
        std::string block;
        bool open = false;
        size_t n = 0;
        auto flush = [&] {
          if (open) on_document(make_doc(source, file + ":" + std::to_string(++n), std::move(block)));
          block.clear();
          open = false;
        };
        while (std::getline(in, line)) {
          strip_cr(line);
          if (line.empty()) {
            flush();
            continue;
          }
          if (open) block.push_back('\n');
          block += line;
          open = true;
        }
        flush();
        break;
      }
      case SourceFormat::Jsonl: {
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
          ++line_no;
          strip_cr(line);
          if (line.empty()) continue;
          const auto where = file + ":" + std::to_string(line_no) + ": ";
          json rec;
          try {
            rec = json::parse(line);
          } catch (const json::exception& e) {
            on_error(where + "malformed JSON");
            continue;
          }
          if (!rec.is_object() || !rec.contains("text") || !rec["text"].is_string()) {
            on_error(where + "record needs a string 'text'");
            continue;
          }
          std::string id;
          if (rec.contains("id") && rec["id"].is_string()) {
            id = rec["id"].get<std::string>();
          } else if (rec.contains("id") && rec["id"].is_number_integer()) {
            id = std::to_string(rec["id"].get<long long>());
          }
          if (id.empty()) {
            on_error(where + "record needs a non-empty 'id'");
            continue;
          }
          Document doc = make_doc(source, std::move(id), rec["text"].get<std::string>());
          if (rec.contains("meta") && rec["meta"].is_object()) {
            for (const auto& [k, v] : rec["meta"].items()) {
              doc.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
            }
          }
          on_document(std::move(doc));
        }
        break;
      }
    }
  }
}

}  // namespace arcorpus
