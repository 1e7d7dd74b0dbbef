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

#include <gtest/gtest.h>

#include <random>

#include "arcorpus/errors.hpp"
#include "arcorpus/segmenter.hpp"
#include "arcorpus/stats.hpp"

namespace arcorpus {
namespace {

const WhitespaceSegmenter kSeg;

std::string fixture(const std::string& name) { return std::string(ARCORPUS_TEST_DATA) + "/fixtures/" + name; }

std::vector<std::string> total_row(const std::string& tsv) {
  const auto start = tsv.rfind("\nTotal\t");
  std::vector<std::string> cells;
  std::string rest = tsv.substr(start + 1);
  rest.pop_back();
  for (size_t p = 0;;) {
    const auto t = rest.find('\t', p);
    cells.push_back(rest.substr(p, t - p));
    if (t == std::string::npos) break;
    p = t + 1;
  }
  return cells;
}

TEST(DocStats, Examples) {
  const auto a = doc_stats("اب اب ج", kSeg);
  EXPECT_EQ(a.tokens, 3u);
  EXPECT_EQ(a.terms.size(), 2u);
  const auto e = doc_stats("", kSeg);
  EXPECT_EQ(e.tokens, 0u);
  EXPECT_EQ(e.terms.size(), 0u);
  const auto one = doc_stats("اب", kSeg);
  EXPECT_EQ(one.tokens, 1u);
  EXPECT_EQ(one.terms.size(), 1u);
  EXPECT_EQ(doc_stats("اب", kSeg, 100).bytes_raw, 100u);
  EXPECT_EQ(doc_stats("اب", kSeg, 100).bytes_clean, 4u);
}

TEST(Merge, UnionOfTerms) {
  CorpusStats a, b;
  a.source("s1").add(doc_stats("اب ج", kSeg));
  b.source("s2").add(doc_stats("اب د", kSeg));
  const auto t = merge(a, b).totals();
  EXPECT_EQ(t.documents, 2u);
  EXPECT_EQ(t.tokens, 4u);
  EXPECT_EQ(t.terms.size(), 3u);
}

CorpusStats random_stats(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {"ا", "ب", "ج", "د", "هـ", "و"};
  static const std::vector<std::string> names = {"a", "b", "c"};
  CorpusStats s;
  const int docs = std::uniform_int_distribution<int>(0, 6)(rng);
  for (int i = 0; i < docs; ++i) {
    std::string text;
    const int n = std::uniform_int_distribution<int>(0, 5)(rng);
    for (int k = 0; k < n; ++k) text += words[rng() % words.size()] + " ";
    auto& src = s.source(names[rng() % names.size()]);
    if (rng() % 5 == 0) {
      src.add_dropped(rng() % 100);
    } else {
      src.add(doc_stats(text, kSeg, text.size() + rng() % 10));
    }
  }
  return s;
}

TEST(Merge, CommutativeAssociativeWithIdentity) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_stats(rng), b = random_stats(rng), c = random_stats(rng);
    EXPECT_EQ(merge(a, CorpusStats{}), a);
    EXPECT_EQ(merge(CorpusStats{}, a), a);
    EXPECT_EQ(merge(a, b), merge(b, a));
    EXPECT_EQ(merge(merge(a, b), c), merge(a, merge(b, c)));
  }
}

TEST(Report, BillionWordsFixture) {
  const auto fx = load_stats_fixture(fixture("billion_words.tsv"));
  EXPECT_EQ(fx.order.size(), 10u);
  const auto tsv = render_report(fx.stats, ReportFormat::Tsv, fx.order);
  const auto total = total_row(tsv);
  EXPECT_EQ(total[1], "5222973");
  EXPECT_EQ(total[3], "9432241");
  const auto md = render_report(fx.stats, ReportFormat::Markdown, fx.order);
  EXPECT_NE(md.find("| Total | 5,222,973 | 0 | 9,432,241 |"), std::string::npos);
  // Rows keep fixture order.
  EXPECT_LT(tsv.find("Alittihad"), tsv.find("Saba News"));
  EXPECT_LT(tsv.find("Youm-7"), tsv.find("Saba News"));
}

TEST(Report, ArabicNewsFixture) {
  const auto fx = load_stats_fixture(fixture("arabic_news.tsv"));
  const auto total = total_row(render_report(fx.stats, ReportFormat::Tsv, fx.order));
  EXPECT_EQ(total[1], "907103");
  EXPECT_EQ(total[2], "7536106");
  EXPECT_EQ(total[3], "4597025");
}

TEST(Report, OsacFixture) {
  const auto fx = load_stats_fixture(fixture("osac.tsv"));
  const auto total = total_row(render_report(fx.stats, ReportFormat::Tsv, fx.order));
  EXPECT_EQ(total[1], "32262");
  EXPECT_EQ(total[2], "22285645");
  EXPECT_EQ(total[3], "700793");
}

TEST(Report, SourceVolumesSumColumns) {
  const auto fx = load_stats_fixture(fixture("source_volumes.tsv"));
  EXPECT_EQ(fx.order.size(), 22u);
  const auto total = total_row(render_report(fx.stats, ReportFormat::Tsv, fx.order));
  EXPECT_EQ(total[1], "92235");
  EXPECT_EQ(total[8], "13409.445");
  EXPECT_EQ(total[9], "526.760");
}

TEST(Report, EmptyStats) {
  const auto tsv = render_report(CorpusStats{}, ReportFormat::Tsv);
  EXPECT_EQ(tsv,
            "source\tdocuments\ttokens\tterms\traw_bytes\tclean_bytes\tdropped\tdistinct_terms\traw_gb\tclean_gb\n"
            "Total\t0\t0\t0\t0\t0\t0\t0\t0.000\t0.000\n");
}

TEST(Report, DistinctTermsColumn) {
  CorpusStats s;
  s.source("a").add(doc_stats("x y", kSeg));
  s.source("b").add(doc_stats("y z", kSeg));
  const auto total = total_row(render_report(s, ReportFormat::Tsv));
  EXPECT_EQ(total[3], "4");  // column sum
  EXPECT_EQ(total[7], "3");  // union
}

TEST(Fixture, Errors) {
  EXPECT_THROW(parse_stats_fixture("name\tdocuments\nx\t1\n"), FormatError);
  EXPECT_THROW(parse_stats_fixture("source\tdocuments\nx\t1\t2\n"), FormatError);
  EXPECT_THROW(parse_stats_fixture("source\tdocuments\nx\tmany\n"), FormatError);
  EXPECT_THROW(parse_stats_fixture("source\twidgets\nx\t1\n"), FormatError);
  EXPECT_THROW(parse_stats_fixture("source\tdocuments\nx\t1\nx\t2\n"), FormatError);
  EXPECT_THROW(load_stats_fixture("/nonexistent/fixture.tsv"), IoError);
}

}  // namespace
}  // namespace arcorpus
