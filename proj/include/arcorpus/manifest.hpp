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

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace arcorpus {

enum class SourceFormat { Plain, DocPerBlock, Jsonl };

std::string_view to_string(SourceFormat f);

struct SourceSpec {
  std::string name;
  std::vector<std::filesystem::path> paths;
  SourceFormat format = SourceFormat::Plain;
  std::string dialect;
  std::string domain;
};

struct SourceManifest {
  std::vector<SourceSpec> sources;
};

// Manifest JSON:
//   {"sources": [{"name": "...", "paths": ["..."], "format": "plain" |
//    "doc-per-block" | "jsonl", "dialect": "...", "domain": "..."}]}
// "path" (a single string) is accepted in place of "paths". Relative paths
// resolve against `base_dir`. Throws SchemaError, DuplicateSource or
// UnknownFormat. Path existence is checked when a run starts, not here.
SourceManifest parse_manifest(std::string_view json_text,
                              const std::filesystem::path& base_dir = {});
SourceManifest load_manifest(const std::filesystem::path& path);

struct Document {
  std::string id;
  std::string source;
  std::string text;
  std::map<std::string, std::string> meta;

  bool operator==(const Document&) const = default;
};

// Streams the documents of one source in file order. Malformed records
// (bad JSON line, missing id/text) are passed to `on_error` and skipped.
// Throws IoError when a file cannot be read.
void read_source(const SourceSpec& source, const std::function<void(Document&&)>& on_document,
                 const std::function<void(const std::string&)>& on_error);

}  // namespace arcorpus
