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

#include "arcorpus/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "arcorpus/errors.hpp"

namespace arcorpus {

void TermCounter::merge(const TermCounter& other) {
  terms_.insert(other.terms_.begin(), other.terms_.end());
  declared_ += other.declared_;
}

void TermCounter::merge(TermCounter&& other) {
  // Splices nodes instead of copying strings.
  terms_.merge(other.terms_);
  declared_ += other.declared_;
}

DocStats doc_stats(std::string_view clean_text, const Segmenter& segmenter, std::uint64_t bytes_raw) {
  DocStats d;
  auto tokens = segmenter.segment(clean_text);
  d.tokens = tokens.size();
  for (auto& t : tokens) d.terms.add(std::move(t));
  d.bytes_raw = bytes_raw;
  d.bytes_clean = clean_text.size();
  return d;
}

void SourceStats::add(const DocStats& doc) {
  ++documents;
  tokens += doc.tokens;
  terms.merge(doc.terms);
  bytes_raw += doc.bytes_raw;
  bytes_clean += doc.bytes_clean;
}

void SourceStats::add(DocStats&& doc) {
  ++documents;
  tokens += doc.tokens;
  terms.merge(std::move(doc.terms));
  bytes_raw += doc.bytes_raw;
  bytes_clean += doc.bytes_clean;
}

void SourceStats::add_dropped(std::uint64_t raw) {
  ++documents;
  ++dropped;
  bytes_raw += raw;
}

void SourceStats::merge(const SourceStats& o) {
  documents += o.documents;
  dropped += o.dropped;
  tokens += o.tokens;
  terms.merge(o.terms);
  bytes_raw += o.bytes_raw;
  bytes_clean += o.bytes_clean;
}

void CorpusStats::merge(const CorpusStats& other) {
  for (const auto& [name, s] : other.sources_) sources_[name].merge(s);
}

SourceStats CorpusStats::totals() const {
  SourceStats t;
  for (const auto& [_, s] : sources_) t.merge(s);
  return t;
}

CorpusStats merge(const CorpusStats& a, const CorpusStats& b) {
  CorpusStats out = a;
  out.merge(b);
  return out;
}

namespace {

std::string gb(std::uint64_t bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(bytes) / 1e9);
  return buf;
}

// 5222973 -> 5,222,973; 13409.445 -> 13,409.445. Other cells pass through.
std::string grouped(const std::string& cell) {
  const auto end = std::min(cell.find('.'), cell.size());
  if (end == 0 || !std::all_of(cell.begin(), cell.begin() + end, [](char c) { return c >= '0' && c <= '9'; })) {
    return cell;
  }
  std::string out;
  for (size_t i = 0; i < end; ++i) {
    if (i > 0 && (end - i) % 3 == 0) out += ',';
    out += cell[i];
  }
  return out + cell.substr(end);
}

}  // namespace

std::string render_report(const CorpusStats& stats, ReportFormat format,
                          const std::vector<std::string>& order) {
  static const std::vector<std::string> kHeader = {
      "source",  "documents",      "tokens", "terms",   "raw_bytes",
      "clean_bytes", "dropped", "distinct_terms", "raw_gb", "clean_gb"};

  std::vector<std::string> names;
  for (const auto& n : order) {
    if (stats.sources().count(n) && std::find(names.begin(), names.end(), n) == names.end()) {
      names.push_back(n);
    }
  }
  for (const auto& [n, _] : stats.sources()) {
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  }

  std::vector<std::vector<std::string>> rows;
  std::uint64_t term_sum = 0;
  bool all_exact = true;
  for (const auto& n : names) {
    const auto& s = stats.sources().at(n);
    term_sum += s.terms.size();
    all_exact = all_exact && s.terms.exact();
    rows.push_back({n, std::to_string(s.documents), std::to_string(s.tokens),
                    std::to_string(s.terms.size()), std::to_string(s.bytes_raw),
                    std::to_string(s.bytes_clean), std::to_string(s.dropped),
                    s.terms.exact() ? std::to_string(s.terms.size()) : "-", gb(s.bytes_raw),
                    gb(s.bytes_clean)});
  }
  const SourceStats t = stats.totals();
  rows.push_back({"Total", std::to_string(t.documents), std::to_string(t.tokens),
                  std::to_string(term_sum), std::to_string(t.bytes_raw),
                  std::to_string(t.bytes_clean), std::to_string(t.dropped),
                  all_exact ? std::to_string(t.terms.size()) : "-", gb(t.bytes_raw),
                  gb(t.bytes_clean)});

  std::ostringstream out;
  if (format == ReportFormat::Tsv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (size_t i = 0; i < cells.size(); ++i) out << (i ? "\t" : "") << cells[i];
      out << '\n';
    };
    line(kHeader);
    for (const auto& r : rows) line(r);
  } else {
    auto line = [&](const std::vector<std::string>& cells) {
      out << "| " << cells[0] << " |";
      for (size_t i = 1; i < cells.size(); ++i) out << ' ' << grouped(cells[i]) << " |";
      out << '\n';
    };
    line(kHeader);
    out << '|';
    for (size_t i = 0; i < kHeader.size(); ++i) out << (i == 0 ? " --- |" : " ---: |");
    out << '\n';
    for (const auto& r : rows) line(r);
  }
  return out.str();
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  size_t start = 0;
  for (;;) {
    const size_t tab = line.find('\t', start);
    cells.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cells;
}

std::uint64_t parse_count(std::string cell, size_t line_no) {
  std::erase(cell, ',');
  if (cell.empty() || !std::all_of(cell.begin(), cell.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw FormatError("stats fixture line " + std::to_string(line_no) + ": bad count '" + cell + "'");
  }
  return std::stoull(cell);
}

// "1,816.5" GB -> bytes, exact (decimal GB, up to 9 fraction digits).
std::uint64_t parse_gb(std::string cell, size_t line_no) {
  std::erase(cell, ',');
  const auto dot = cell.find('.');
  std::string whole = cell.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : cell.substr(dot + 1);
  if (whole.empty()) whole = "0";
  if (frac.size() > 9) {
    throw FormatError("stats fixture line " + std::to_string(line_no) + ": too many decimals '" + cell + "'");
  }
  frac.resize(9, '0');
  return parse_count(whole, line_no) * 1000000000ull + parse_count(frac, line_no);
}

}  // namespace

StatsFixture parse_stats_fixture(std::string_view tsv) {
  std::istringstream in{std::string(tsv)};
  std::string line;
  std::vector<std::string> header;
  StatsFixture fx;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cells = split_tabs(line);
    if (header.empty()) {
      header = std::move(cells);
      if (header.front() != "source") throw FormatError("stats fixture: first column must be 'source'");
      continue;
    }
    if (cells.size() != header.size()) {
      throw FormatError("stats fixture line " + std::to_string(line_no) + ": wrong column count");
    }
    const std::string& name = cells[0];
    if (fx.stats.sources().count(name)) {
      throw FormatError("stats fixture: duplicate source '" + name + "'");
    }
    SourceStats& s = fx.stats.source(name);
    fx.order.push_back(name);
    for (size_t c = 1; c < header.size(); ++c) {
      const auto& col = header[c];
      if (col == "raw_gb") {
        s.bytes_raw = parse_gb(cells[c], line_no);
        continue;
      }
      if (col == "clean_gb") {
        s.bytes_clean = parse_gb(cells[c], line_no);
        continue;
      }
      const auto v = parse_count(cells[c], line_no);
      if (col == "documents") {
        s.documents = v;
      } else if (col == "tokens") {
        s.tokens = v;
      } else if (col == "terms") {
        s.terms = TermCounter::declared(v);
      } else if (col == "raw_bytes") {
        s.bytes_raw = v;
      } else if (col == "clean_bytes") {
        s.bytes_clean = v;
      } else if (col == "dropped") {
        s.dropped = v;
      } else {
        throw FormatError("stats fixture: unknown column '" + col + "'");
      }
    }
  }
  return fx;
}

StatsFixture load_stats_fixture(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read stats fixture " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stats_fixture(buf.str());
}

}  // namespace arcorpus
