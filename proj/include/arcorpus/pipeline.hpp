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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "arcorpus/charset.hpp"
#include "arcorpus/config.hpp"
#include "arcorpus/manifest.hpp"
#include "arcorpus/stats.hpp"
#include "arcorpus/transforms.hpp"

namespace arcorpus {

// Applies the configured transform chain until the text stops changing.
// A single pass is not always stable: deleting a noisy scalar can join two
// letter runs or digit groups that an earlier step would have handled.
class Cleaner {
 public:
  Cleaner(const CleanConfig& cfg, const CharsetTable& charset);

  // Throws InvalidUtf8.
  std::string clean(std::string_view text) const;
  Document clean(const Document& doc) const;

  const CleanConfig& config() const { return cfg_; }
  const CharsetTable& charset() const { return charset_; }

 private:
  CleanConfig cfg_;
  const CharsetTable& charset_;
  std::vector<Transform> chain_;
};

Document clean_document(const Document& doc, const CleanConfig& cfg, const CharsetTable& charset);

// Reports the first noisy scalars of an already-cleaned text (mask tags are
// allowed).
struct NoisyHit {
  size_t offset;
  char32_t ch;
};
std::vector<NoisyHit> find_noisy(std::string_view text, const CharsetTable& charset,
                                 const CleanConfig& cfg, size_t limit = SIZE_MAX);

struct PipelineOptions {
  std::uint64_t shard_size = 64ull << 20;  // bytes per shard before rotating
  unsigned workers = 0;                     // 0: hardware concurrency
  const Segmenter* segmenter = nullptr;     // null: whitespace segmenter
};

struct RunResult {
  CorpusStats stats;
  std::vector<std::string> source_order;
  std::vector<std::filesystem::path> shards;
  std::vector<std::string> errors;  // skipped sources and malformed records
  std::uint64_t invalid_utf8 = 0;   // documents dropped for bad encoding
};

// Cleans every document of every source and writes
// <out_dir>/<source>-NNNNN.jsonl shards, run_report.json, report.tsv and
// report.md. Documents that clean to empty text are dropped and counted.
// Output bytes do not depend on the worker count.
RunResult run_pipeline(const SourceManifest& manifest, const CleanConfig& cfg,
                       const CharsetTable& charset, const std::filesystem::path& out_dir,
                       const PipelineOptions& options = {});

// One shard record: {"id","source","text","dialect","domain"}, no newline.
// doc.text must be valid UTF-8 (cleaner output is).
std::string shard_record(const Document& doc, const SourceSpec& source);

}  // namespace arcorpus
