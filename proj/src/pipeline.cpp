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

#include "arcorpus/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <optional>
#include <thread>

#include "arcorpus/errors.hpp"
#include "arcorpus/utf8.hpp"
#include "json.hpp"

namespace arcorpus {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

// Upper bound on chain passes; in practice the second pass is already a
// no-op for almost every document.
constexpr int kMaxPasses = 8;

constexpr size_t kBatchDocs = 512;
constexpr size_t kBatchBytes = 8u << 20;

}  // namespace

Cleaner::Cleaner(const CleanConfig& cfg, const CharsetTable& charset)
    : cfg_(cfg), charset_(charset) {
  cfg_.validate();
  chain_ = build_chain(cfg_, charset_);
}

std::string Cleaner::clean(std::string_view text) const {
  utf8::validate(text);
  std::string cur = apply_chain(chain_, text);
  for (int pass = 1; pass < kMaxPasses; ++pass) {
    std::string next = apply_chain(chain_, cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

Document Cleaner::clean(const Document& doc) const {
  Document out = doc;
  out.text = clean(doc.text);
  return out;
}

Document clean_document(const Document& doc, const CleanConfig& cfg, const CharsetTable& charset) {
  return Cleaner(cfg, charset).clean(doc);
}

std::vector<NoisyHit> find_noisy(std::string_view text, const CharsetTable& charset,
                                 const CleanConfig& cfg, size_t limit) {
  std::vector<NoisyHit> hits;
  const auto tags = cfg.mask.tags();
  size_t count = 0;
  scan_classes(text, charset, cfg.chars, tags, [&](size_t offset, char32_t ch, CharClass cls) {
    if (cls != CharClass::Noisy) return;
    if (count++ < limit) hits.push_back({offset, ch});
  });
  return hits;
}

std::string shard_record(const Document& doc, const SourceSpec& source) {
  auto meta = [&](const char* key, const std::string& fallback) -> const std::string& {
    auto it = doc.meta.find(key);
    return it == doc.meta.end() ? fallback : it->second;
  };
  std::string line;
  line.reserve(doc.text.size() + 96);
  // Cleaned text is valid UTF-8 already; when nothing needs escaping it is
  // copied as is. Everything else goes through the json serializer.
  auto quoted = [&line](const std::string& s, bool valid_utf8) {
    const bool plain = valid_utf8 && std::none_of(s.begin(), s.end(), [](char c) {
                         return c == '"' || c == '\\' || static_cast<unsigned char>(c) < 0x20;
                       });
    if (plain) {
      line += '"';
      line += s;
      line += '"';
    } else {
      line += nlohmann::json(s).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    }
  };
  line += "{\"id\":";
  quoted(doc.id, false);
  line += ",\"source\":";
  quoted(source.name, false);
  line += ",\"text\":";
  quoted(doc.text, true);
  line += ",\"dialect\":";
  quoted(meta("dialect", source.dialect), false);
  line += ",\"domain\":";
  quoted(meta("domain", source.domain), false);
  line += '}';
  return line;
}

namespace {

class ShardWriter {
 public:
  ShardWriter(fs::path dir, std::string source, std::uint64_t limit, std::vector<fs::path>& shards)
      : dir_(std::move(dir)), source_(std::move(source)), limit_(limit), shards_(shards) {}

  void write(const std::string& record) {
    const std::uint64_t size = record.size() + 1;
    if (!out_.is_open() || (bytes_ > 0 && bytes_ + size > limit_)) open_next();
    out_.write(record.data(), static_cast<std::streamsize>(record.size()));
    out_.put('\n');
    if (!out_) throw IoError("write failed for " + shards_.back().string());
    bytes_ += size;
  }

 private:
  void open_next() {
    if (out_.is_open()) out_.close();
    char name[32];
    std::snprintf(name, sizeof name, "-%05d.jsonl", ++index_);
    fs::path path = dir_ / (source_ + name);
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw IoError("cannot create shard " + path.string());
    shards_.push_back(std::move(path));
    bytes_ = 0;
  }

  fs::path dir_;
  std::string source_;
  std::uint64_t limit_;
  std::vector<fs::path>& shards_;
  std::ofstream out_;
  std::uint64_t bytes_ = 0;
  int index_ = -1;
};

struct Outcome {
  std::string record;  // empty when dropped
  DocStats stats;
  bool invalid_utf8 = false;
};

template <typename Fn>
void parallel_for(size_t n, unsigned workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const unsigned count = static_cast<unsigned>(std::min<size_t>(workers, n));
  for (unsigned t = 0; t < count; ++t) {
    threads.emplace_back([&, t] {
      try {
        for (size_t i; (i = next.fetch_add(1)) < n;) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void remove_stale_shards(const fs::path& dir, const std::string& source) {
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.size() == source.size() + 12 && name.rfind(source + "-", 0) == 0 &&
        name.ends_with(".jsonl")) {
      fs::remove(entry.path(), ec);
    }
  }
}

ojson stats_json(const SourceStats& s) {
  ojson j;
  j["documents"] = s.documents;
  j["dropped"] = s.dropped;
  j["tokens"] = s.tokens;
  j["terms"] = s.terms.size();
  j["bytes_raw"] = s.bytes_raw;
  j["bytes_clean"] = s.bytes_clean;
  return j;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

RunResult run_pipeline(const SourceManifest& manifest, const CleanConfig& cfg,
                       const CharsetTable& charset, const fs::path& out_dir,
                       const PipelineOptions& options) {
  if (options.shard_size == 0) throw ConfigError("shard size must be positive");
  const Cleaner cleaner(cfg, charset);
  const WhitespaceSegmenter default_segmenter(cfg.mask, cfg.chars);
  const Segmenter& segmenter = options.segmenter ? *options.segmenter : default_segmenter;
  const unsigned workers =
      options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir.string());

  RunResult result;
  std::map<std::string, std::vector<std::string>> shard_names;
  for (const auto& source : manifest.sources) {
    std::optional<std::string> unreadable;
    for (const auto& p : source.paths) {
      std::ifstream probe(p, std::ios::binary);
      if (!probe || fs::is_directory(p)) {
        unreadable = p.string();
        break;
      }
    }
    if (unreadable) {
      result.errors.push_back("source '" + source.name + "' skipped: cannot read " + *unreadable);
      continue;
    }

    remove_stale_shards(out_dir, source.name);
    result.source_order.push_back(source.name);
    SourceStats& stats = result.stats.source(source.name);
    const size_t first_shard = result.shards.size();
    ShardWriter writer(out_dir, source.name, options.shard_size, result.shards);

    std::vector<Document> batch;
    size_t batch_bytes = 0;
    auto process = [&] {
      std::vector<Outcome> outcomes(batch.size());
      parallel_for(batch.size(), workers, [&](size_t i) {
        const Document& doc = batch[i];
        Outcome& o = outcomes[i];
        if (!utf8::is_valid(doc.text)) {
          o.invalid_utf8 = true;
          o.stats.bytes_raw = doc.text.size();
          return;
        }
        Document cleaned{doc.id, doc.source, cleaner.clean(doc.text), doc.meta};
        o.stats = doc_stats(cleaned.text, segmenter, doc.text.size());
        if (!cleaned.text.empty()) o.record = shard_record(cleaned, source);
      });
      for (auto& o : outcomes) {
        if (o.record.empty()) {
          stats.add_dropped(o.stats.bytes_raw);
          if (o.invalid_utf8) ++result.invalid_utf8;
          continue;
        }
        writer.write(o.record);
        stats.add(std::move(o.stats));
      }
      batch.clear();
      batch_bytes = 0;
    };

    try {
      read_source(
          source,
          [&](Document&& doc) {
            batch_bytes += doc.text.size();
            batch.push_back(std::move(doc));
            if (batch.size() >= kBatchDocs || batch_bytes >= kBatchBytes) process();
          },
          [&](const std::string& msg) { result.errors.push_back(source.name + ": " + msg); });
      process();
    } catch (const IoError& e) {
      result.errors.push_back("source '" + source.name + "' incomplete: " + e.what());
    }
    for (size_t i = first_shard; i < result.shards.size(); ++i) {
      shard_names[source.name].push_back(result.shards[i].filename().string());
    }
  }

  ojson report;
  report["tool"] = "arcorpus";
  report["version"] = ARCORPUS_VERSION;
  report["charset_version"] = charset.version();
  report["config"] = ojson::parse(config_to_json(cfg));
  report["shard_size"] = options.shard_size;
  auto& sources = report["sources"];
  sources = ojson::array();
  for (const auto& source : manifest.sources) {
    auto it = result.stats.sources().find(source.name);
    if (it == result.stats.sources().end()) continue;
    ojson s;
    s["name"] = source.name;
    s["format"] = to_string(source.format);
    s["dialect"] = source.dialect;
    s["domain"] = source.domain;
    s["stats"] = stats_json(it->second);
    s["shards"] = shard_names[source.name];
    sources.push_back(std::move(s));
  }
  auto totals = stats_json(result.stats.totals());
  report["totals"] = std::move(totals);
  report["invalid_utf8"] = result.invalid_utf8;
  report["errors"] = result.errors;

  write_file(out_dir / "run_report.json", report.dump(2) + "\n");
  write_file(out_dir / "report.tsv", render_report(result.stats, ReportFormat::Tsv, result.source_order));
  write_file(out_dir / "report.md",
             render_report(result.stats, ReportFormat::Markdown, result.source_order));
  return result;
}

}  // namespace arcorpus
