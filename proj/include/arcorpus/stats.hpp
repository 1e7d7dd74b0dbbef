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
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "arcorpus/segmenter.hpp"

namespace arcorpus {

// Distinct-token set. Rows loaded from published tables carry only a
// declared count; declared counts from different rows are treated as
// disjoint when merged.
class TermCounter {
 public:
  TermCounter() = default;
  static TermCounter declared(std::uint64_t n) {
    TermCounter t;
    t.declared_ = n;
    return t;
  }

  void add(std::string term) { terms_.insert(std::move(term)); }
  void merge(const TermCounter& other);
  void merge(TermCounter&& other);

  std::uint64_t size() const { return terms_.size() + declared_; }
  bool exact() const { return declared_ == 0; }
  const std::unordered_set<std::string>& terms() const { return terms_; }

  bool operator==(const TermCounter&) const = default;

 private:
  std::unordered_set<std::string> terms_;
  std::uint64_t declared_ = 0;
};

struct DocStats {
  std::uint64_t tokens = 0;
  TermCounter terms;
  std::uint64_t bytes_raw = 0;
  std::uint64_t bytes_clean = 0;
};

DocStats doc_stats(std::string_view clean_text, const Segmenter& segmenter,
                   std::uint64_t bytes_raw);
inline DocStats doc_stats(std::string_view clean_text, const Segmenter& segmenter) {
  return doc_stats(clean_text, segmenter, clean_text.size());
}

struct SourceStats {
  std::uint64_t documents = 0;  // documents read, including dropped ones
  std::uint64_t dropped = 0;
  std::uint64_t tokens = 0;
  TermCounter terms;
  std::uint64_t bytes_raw = 0;
  std::uint64_t bytes_clean = 0;

  void add(const DocStats& doc);
  void add(DocStats&& doc);
  void add_dropped(std::uint64_t bytes_raw);
  void merge(const SourceStats& other);
  bool operator==(const SourceStats&) const = default;
};

// Per-source counters. merge() is commutative and associative with the
// default-constructed value as identity.
class CorpusStats {
 public:
  SourceStats& source(const std::string& name) { return sources_[name]; }
  const std::map<std::string, SourceStats>& sources() const { return sources_; }

  void merge(const CorpusStats& other);
  // Column sums; terms is the union of the per-source sets.
  SourceStats totals() const;

  bool operator==(const CorpusStats&) const = default;

 private:
  std::map<std::string, SourceStats> sources_;
};

CorpusStats merge(const CorpusStats& a, const CorpusStats& b);

enum class ReportFormat { Tsv, Markdown };

// One row per source, in `order` when given (remaining sources follow in
// name order), then a Total row. Columns: source, documents, tokens, terms,
// raw_bytes, clean_bytes, dropped, distinct_terms, raw_gb, clean_gb. The
// Total row's terms column is the column sum; distinct_terms holds the union
// size, or "-" when some row only has a declared count. Markdown groups
// digits with commas; TSV prints plain integers.
std::string render_report(const CorpusStats& stats, ReportFormat format,
                          const std::vector<std::string>& order = {});

// Reads a statistics table: TSV with a header naming any of source,
// documents, tokens, terms, raw_bytes, clean_bytes, dropped, raw_gb,
// clean_gb. Thousands separators inside numbers are accepted; *_gb cells are
// decimal gigabytes.
struct StatsFixture {
  CorpusStats stats;
  std::vector<std::string> order;
};
StatsFixture parse_stats_fixture(std::string_view tsv);
StatsFixture load_stats_fixture(const std::string& path);

}  // namespace arcorpus
