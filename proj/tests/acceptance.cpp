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

// Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
// when a blocking criterion fails. Throughput (9) is reported only.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "arcorpus/bpe.hpp"
#include "arcorpus/charset.hpp"
#include "arcorpus/cli.hpp"
#include "arcorpus/manifest.hpp"
#include "arcorpus/pipeline.hpp"
#include "arcorpus/segmenter.hpp"
#include "arcorpus/stats.hpp"
#include "arcorpus/transforms.hpp"
#include "arcorpus/utf8.hpp"
#include "json.hpp"
#include "support/oracles.hpp"
#include "support/text_gen.hpp"

namespace fs = std::filesystem;
using namespace arcorpus;
using arcorpus::testing::TextGen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const Outcome& o, bool blocking = true) {
  std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass && blocking) ++failures;
}

void guarded(int id, const char* name, const std::function<Outcome()>& fn, bool blocking = true) {
  try {
    report(id, name, fn(), blocking);
  } catch (const std::exception& e) {
    report(id, name, {false, std::string("exception: ") + e.what()}, blocking);
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fixture(const std::string& name) { return std::string(ARCORPUS_TEST_DATA) + "/fixtures/" + name; }

// ---- 1 ----

std::vector<std::string> total_cells(const std::string& tsv) {
  std::vector<std::string> cells;
  std::string row = tsv.substr(tsv.rfind("\nTotal\t") + 1);
  row.pop_back();
  std::istringstream in(row);
  for (std::string c; std::getline(in, c, '\t');) cells.push_back(c);
  return cells;
}

Outcome table_fixtures() {
  const auto t0 = Clock::now();
  struct Case {
    const char* file;
    std::map<int, std::string> expect;  // column -> printed value
  };
  // Columns: 1 documents, 2 tokens, 3 terms.
  const std::vector<Case> cases = {
      {"billion_words.tsv", {{1, "5222973"}, {3, "9432241"}}},
      {"arabic_news.tsv", {{1, "907103"}, {2, "7536106"}, {3, "4597025"}}},
      {"osac.tsv", {{1, "32262"}, {2, "22285645"}, {3, "700793"}}},
  };
  std::string detail;
  bool ok = true;
  for (const auto& c : cases) {
    const auto fx = load_stats_fixture(fixture(c.file));
    const auto cells = total_cells(render_report(fx.stats, ReportFormat::Tsv, fx.order));
    for (const auto& [col, want] : c.expect) {
      if (cells.at(col) != want) {
        ok = false;
        detail += std::string(c.file) + " col " + std::to_string(col) + " = " + cells.at(col) + " want " + want + "; ";
      }
    }
    const auto md = render_report(fx.stats, ReportFormat::Markdown, fx.order);
    detail += md.substr(md.rfind("| Total"), md.rfind('\n') - md.rfind("| Total")).substr(0, 48) + "... ";
  }
  const double s = seconds_since(t0);
  ok = ok && s < 1.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.3f s)", s);
  return {ok, detail + buf};
}

// ---- 2 and 3 ----

std::vector<std::string> property_inputs() {
  TextGen gen(20260101);
  std::vector<std::string> v;
  v.reserve(10000);
  for (int i = 0; i < 10000; ++i) v.push_back(gen.mixed());
  return v;
}

Outcome idempotence(const std::vector<std::string>& inputs, std::vector<std::string>* cleaned) {
  const auto t0 = Clock::now();
  const Cleaner cleaner{CleanConfig{}, default_charset()};
  size_t same = 0;
  std::string first_bad;
  cleaned->clear();
  for (const auto& s : inputs) {
    Document d{"x", "s", s, {}};
    const Document once = cleaner.clean(d);
    const Document twice = cleaner.clean(once);
    if (twice == once) {
      ++same;
    } else if (first_bad.empty()) {
      first_bad = s;
    }
    cleaned->push_back(once.text);
  }
  const double sec = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/%zu inputs stable under a second clean (%.2f s)", same, inputs.size(), sec);
  std::string detail = buf;
  if (!first_bad.empty()) detail += "; first failure input: " + nlohmann::json(first_bad).dump();
  return {same == inputs.size() && sec < 30.0, detail};
}

// Independent membership check: literal grapheme list, kept punctuation,
// ASCII digits, the space left by whitespace collapse, mask tags, emoji.
size_t closure_violations(const std::string& text, const CleanConfig& cfg, std::string* example) {
  const auto& graphemes = arcorpus::testing::reference_graphemes();
  const auto tags = cfg.mask.tags();
  size_t bad = 0;
  for (size_t i = 0; i < text.size();) {
    bool tag = false;
    for (const auto& t : tags) {
      if (text.compare(i, t.size(), t) == 0) {
        i += t.size();
        tag = true;
        break;
      }
    }
    if (tag) continue;
    const size_t at = i;
    const char32_t ch = utf8::next(text, i);
    const bool ok = graphemes.find(ch) != std::u32string::npos || ch == U'!' || ch == U'.' || ch == U'؟' ||
                    (ch >= U'0' && ch <= U'9') || ch == U' ' || is_emoji(ch);
    if (!ok) {
      ++bad;
      if (example->empty()) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "U+%04X at byte %zu", static_cast<unsigned>(ch), at);
        *example = buf;
      }
    }
  }
  return bad;
}

Outcome closure(const std::vector<std::string>& inputs, const std::vector<std::string>& cleaned,
                const fs::path& work) {
  const CleanConfig cfg;
  size_t violations = 0;
  size_t lib_noisy = 0;
  std::string example;
  for (const auto& t : cleaned) {
    violations += closure_violations(t, cfg, &example);
    lib_noisy += find_noisy(t, default_charset(), cfg).size();
  }
  // Same inputs through the pipeline, then validate-charset on the shards.
  const fs::path dir = work / "closure";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "in.jsonl", std::ios::binary);
    for (size_t i = 0; i < inputs.size(); ++i) out << nlohmann::json{{"id", i}, {"text", inputs[i]}}.dump() << '\n';
  }
  std::ofstream(dir / "m.json")
      << R"({"sources":[{"name":"fuzz","path":"in.jsonl","format":"jsonl","dialect":"MSA","domain":"Cross"}]})";
  const auto run = run_pipeline(load_manifest(dir / "m.json"), cfg, default_charset(), dir / "out");
  std::ostringstream out, err;
  const int code = cli::main({"validate-charset", "--in", (dir / "out").string()}, out, err);
  std::string detail = std::to_string(violations) + " reference violations, " + std::to_string(lib_noisy) +
                       " noisy by classify, validate-charset exit " + std::to_string(code) + " on " +
                       std::to_string(run.shards.size()) + " shard(s)";
  if (!example.empty()) detail += "; first: " + example;
  return {violations == 0 && lib_noisy == 0 && code == 0, detail};
}

// ---- 4 ----

Outcome masking_completeness() {
  TextGen gen(4242);
  const Cleaner cleaner{CleanConfig{}, default_charset()};
  const CleanConfig& cfg = cleaner.config();
  size_t injected[3] = {0, 0, 0};
  size_t found[3] = {0, 0, 0};
  size_t leftovers = 0;
  size_t docs_ok = 0;
  std::string first_bad;
  for (int d = 0; d < 1000; ++d) {
    const size_t words = gen.uniform(5, 60);
    std::vector<std::string> gaps(words + 1);
    size_t want[3] = {0, 0, 0};
    const size_t items = gen.uniform(1, 8);
    for (size_t k = 0; k < items; ++k) {
      const size_t gap = gen.uniform(0, words);
      if (!gaps[gap].empty()) continue;
      const size_t kind = gen.uniform(0, 2);
      gaps[gap] = kind == 0 ? gen.url() : kind == 1 ? gen.email() : gen.phone(gen.chance(0.5));
      ++want[kind];
    }
    std::string text;
    for (size_t w = 0; w <= words; ++w) {
      if (!gaps[w].empty()) text += " " + gaps[w] + " ";
      if (w < words) text += (w ? " " : "") + gen.arabic_word();
    }
    const std::string out = cleaner.clean(text);
    bool ok = true;
    for (auto kind : {arcorpus::testing::Kind::Url, arcorpus::testing::Kind::Email, arcorpus::testing::Kind::Phone}) {
      const auto left = arcorpus::testing::reference_matches(out, kind).size();
      leftovers += left;
      ok = ok && left == 0;
    }
    const std::string tags[3] = {cfg.mask.url_tag, cfg.mask.mail_tag, cfg.mask.phone_tag};
    for (int k = 0; k < 3; ++k) {
      const size_t n = arcorpus::testing::count_substr(out, tags[k]);
      injected[k] += want[k];
      found[k] += n;
      ok = ok && n == want[k];
    }
    if (ok) {
      ++docs_ok;
    } else if (first_bad.empty()) {
      first_bad = text;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu/1000 docs exact; tags link %zu/%zu mail %zu/%zu phone %zu/%zu; %zu matches left",
                docs_ok, found[0], injected[0], found[1], injected[1], found[2], injected[2], leftovers);
  std::string detail = buf;
  if (!first_bad.empty()) detail += "; first failure: " + nlohmann::json(first_bad).dump();
  return {docs_ok == 1000 && leftovers == 0, detail};
}

// ---- 5 ----

Outcome bpe_oracle() {
  TextGen gen(5150);
  static const std::vector<std::string> units = {"a", "b", "c", "d", "ا", "ب", "ت", "ة", "ي", "😀"};
  size_t agree = 0;
  size_t compared = 0;
  size_t total_merges = 0;
  for (int c = 0; c < 200; ++c) {
    std::vector<std::string> corpus;
    const size_t budget = gen.uniform(1, 100);
    for (size_t used = 0; used < budget;) {
      std::string w;
      const size_t n = gen.uniform(1, 8);
      for (size_t i = 0; i < n && used < budget; ++i, ++used) w += gen.pick(units);
      corpus.push_back(w);
    }
    const size_t target = gen.uniform(1, 20);
    for (bool scalars : {false, true}) {
      const auto vocab = bpe_train(corpus, target, scalars ? BaseUnit::Scalars : BaseUnit::Bytes);
      std::vector<std::pair<std::string, std::string>> got;
      for (const auto& [l, r] : vocab.merges()) got.emplace_back(vocab.token(l), vocab.token(r));
      const auto want = arcorpus::testing::brute_force_merges(corpus, target, scalars);
      ++compared;
      total_merges += want.size();
      if (got == want) ++agree;
    }
  }
  return {agree == compared, std::to_string(agree) + "/" + std::to_string(compared) +
                                 " merge sequences identical (200 corpora x byte and scalar units, " +
                                 std::to_string(total_merges) + " merges)"};
}

// ---- 6 ----

Outcome bpe_round_trip() {
  TextGen gen(6006);
  const Cleaner cleaner{CleanConfig{}, default_charset()};
  std::string sample;
  while (sample.size() < (1u << 20)) {
    const std::string c = cleaner.clean(gen.mixed());
    if (c.empty()) continue;
    sample += c;
    sample += '\n';
  }
  BpeTrainer trainer;
  trainer.add_text(sample.substr(0, sample.size() / 2), WhitespaceSegmenter());
  size_t ok = 0, total = 0;
  std::string detail;
  for (auto unit : {BaseUnit::Bytes, BaseUnit::Scalars}) {
    const auto vocab = trainer.train(500, unit);
    const auto ids = bpe_encode(sample, vocab);
    const bool sample_ok = bpe_decode(ids, vocab) == sample;
    size_t fuzz_ok = 0;
    TextGen fuzz(6007);
    for (int i = 0; i < 10000; ++i) {
      const std::string s = fuzz.mixed();
      fuzz_ok += bpe_decode(bpe_encode(s, vocab), vocab) == s;
    }
    ok += sample_ok + fuzz_ok;
    total += 1 + 10000;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %zu-byte sample %s (%zu ids), fuzz %zu/10000; ",
                  std::string(to_string(unit)).c_str(), sample.size(), sample_ok ? "exact" : "MISMATCH",
                  ids.size(), fuzz_ok);
    detail += buf;
  }
  return {ok == total, detail};
}

// ---- 7 and 9 ----

struct ParallelResult {
  Outcome determinism;
  Outcome throughput;
};

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) files[e.path().filename().string()] = read_file(e.path());
  }
  return files;
}

ParallelResult parallel_equivalence(const fs::path& work, std::uint64_t target_bytes) {
  const fs::path dir = work / "parallel";
  fs::remove_all(dir);
  fs::create_directories(dir / "raw" / "books");
  TextGen gen(7777);
  const std::uint64_t per_source = target_bytes / 3;
  std::uint64_t raw_bytes = 0;
  {
    std::ofstream web(dir / "raw" / "web.jsonl", std::ios::binary);
    for (std::uint64_t n = 0, i = 0; n < per_source; ++i) {
      const std::string line = nlohmann::json{{"id", i}, {"text", gen.mixed()}}.dump() + "\n";
      web << line;
      n += line.size();
    }
    std::ofstream news(dir / "raw" / "news.txt", std::ios::binary);
    for (std::uint64_t n = 0; n < per_source;) {
      std::string block = gen.mixed();
      for (auto& c : block) {
        if (c == '\n' || c == '\r') c = ' ';
      }
      block += "\n\n";
      news << block;
      n += block.size();
    }
    for (std::uint64_t n = 0, i = 0; n < per_source; ++i) {
      std::string doc;
      while (doc.size() < 200000) doc += gen.mixed() + "\n";
      char name[32];
      std::snprintf(name, sizeof name, "book%03llu.txt", static_cast<unsigned long long>(i));
      std::ofstream(dir / "raw" / "books" / name, std::ios::binary) << doc;
      n += doc.size();
    }
  }
  for (const auto& e : fs::recursive_directory_iterator(dir / "raw")) {
    if (e.is_regular_file()) raw_bytes += e.file_size();
  }
  nlohmann::json books = nlohmann::json::array();
  for (const auto& e : fs::directory_iterator(dir / "raw" / "books")) books.push_back("raw/books/" + e.path().filename().string());
  std::sort(books.begin(), books.end());
  const nlohmann::json manifest = {
      {"sources",
       {{{"name", "web"}, {"path", "raw/web.jsonl"}, {"format", "jsonl"}, {"dialect", "Multi-dialect"}, {"domain", "Cross"}},
        {{"name", "news"}, {"path", "raw/news.txt"}, {"format", "doc-per-block"}, {"dialect", "MSA"}, {"domain", "News"}},
        {{"name", "books"}, {"paths", books}, {"format", "plain"}, {"dialect", "CA"}, {"domain", "Education"}}}}};
  std::ofstream(dir / "manifest.json") << manifest.dump(2);

  ParallelResult res;
  std::map<std::string, std::string> snaps[2];
  double secs[2] = {0, 0};
  const char* workers[2] = {"1", "4"};
  for (int k = 0; k < 2; ++k) {
    const fs::path out = dir / (std::string("out_w") + workers[k]);
    std::ostringstream o, e;
    const auto t0 = Clock::now();
    const int code = cli::main({"clean", "--manifest", (dir / "manifest.json").string(), "--out", out.string(),
                                "--workers", workers[k], "--shard-size", "4000000"},
                               o, e);
    secs[k] = seconds_since(t0);
    if (code != 0) {
      res.determinism = {false, "clean failed: " + e.str()};
      return res;
    }
    const int tcode = cli::main({"bpe-train", "--in", out.string(), "--merges", "300", "--out",
                                 (out / "vocab.bpe").string()},
                                o, e);
    if (tcode != 0) {
      res.determinism = {false, "bpe-train failed: " + e.str()};
      return res;
    }
    snaps[k] = snapshot(out);
  }
  size_t differing = 0;
  for (const auto& [name, body] : snaps[0]) {
    auto it = snaps[1].find(name);
    if (it == snaps[1].end() || it->second != body) ++differing;
  }
  differing += snaps[1].size() > snaps[0].size() ? snaps[1].size() - snaps[0].size() : 0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%.1f MB raw, %zu output files (shards, vocab, reports), %zu differ between --workers 1 and 4",
                raw_bytes / 1e6, snaps[0].size(), differing);
  res.determinism = {differing == 0 && snaps[0].size() > 3, buf};
  const double mbps = raw_bytes / 1e6 / secs[0];
  std::snprintf(buf, sizeof buf, "%.1f MB/s with 1 worker (%.1f s); 4 workers: %.1f s on %u core(s); target 20 MB/s",
                mbps, secs[0], secs[1], std::thread::hardware_concurrency());
  res.throughput = {mbps >= 20.0, buf};
  return res;
}

// ---- 8 ----

Outcome unit_vectors() {
  const CleanConfig cfg;
  std::vector<std::string> failed;
  auto check = [&](const std::string& name, const std::string& got, const std::string& want) {
    if (got != want) failed.push_back(name);
  };
  auto cp = [](char32_t c) { return TextGen::encode(c); };
  check("alef+hamza above", normalize_hamza("ا" + cp(0x0654)), "أ");
  check("waw+hamza above", normalize_hamza("و" + cp(0x0654)), "ؤ");
  check("ya+hamza above", normalize_hamza("ي" + cp(0x0654)), "ئ");
  check("alef+hamza below", normalize_hamza("ا" + cp(0x0655)), "إ");
  for (int d = 0; d < 10; ++d) {
    check("digit U+066" + std::to_string(d), normalize_digits(cp(0x0660 + d)), std::string(1, char('0' + d)));
    check("digit U+06F" + std::to_string(d), normalize_digits(cp(0x06F0 + d)), std::string(1, char('0' + d)));
  }
  check("tatweel", strip_tatweel("العـــربية"), "العربية");
  check("tatweel only", strip_tatweel("ـــ"), "");
  check("slash-hyphen", remove_slash_hyphen("a/-b"), "ab");
  check("slash-hyphen repeated", remove_slash_hyphen("/-/-"), "");
  check("lone slash", remove_slash_hyphen("a/b"), "a/b");
  check("kept !", normalize_punctuation("نعم!", cfg), "نعم!");
  check("kept .", normalize_punctuation("نعم.", cfg), "نعم.");
  check("kept ؟", normalize_punctuation("نعم؟", cfg), "نعم؟");
  check("? -> ؟", normalize_punctuation("ماذا?", cfg), "ماذا؟");
  check("comma and semicolon dropped", normalize_punctuation("أ، ب؛ ج, د; هـ", cfg), "أ ب ج د هـ");
  check("other punctuation dropped", normalize_punctuation(":\"'()[]{}«»…-_/", cfg), "");
  const size_t total = 4 + 20 + 2 + 3 + 7;
  std::string detail = std::to_string(total - failed.size()) + "/" + std::to_string(total) + " vectors exact";
  for (const auto& f : failed) detail += "; failed: " + f;
  return {failed.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arcorpus acceptance run"};
  std::string work = (fs::temp_directory_path() / "arcorpus_acceptance").string();
  double megabytes = 50.0;
  app.add_option("--work-dir", work, "Scratch directory");
  app.add_option("--megabytes", megabytes, "Size of the synthetic three-source corpus");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  guarded(1, "table-fixture arithmetic", table_fixtures);
  const auto inputs = property_inputs();
  std::vector<std::string> cleaned;
  guarded(2, "cleaning idempotence", [&] { return idempotence(inputs, &cleaned); });
  guarded(3, "charset closure", [&] { return closure(inputs, cleaned, work); });
  guarded(4, "masking completeness", masking_completeness);
  guarded(5, "BPE oracle equivalence", bpe_oracle);
  guarded(6, "BPE round-trip", bpe_round_trip);
  ParallelResult par;
  try {
    par = parallel_equivalence(work, static_cast<std::uint64_t>(megabytes * 1e6));
  } catch (const std::exception& e) {
    par.determinism = {false, std::string("exception: ") + e.what()};
    par.throughput = {false, "not measured"};
  }
  report(7, "determinism across worker counts", par.determinism);
  guarded(8, "unit vectors", unit_vectors);
  report(9, "throughput, non-blocking", par.throughput, false);

  std::printf("%s\n", failures == 0 ? "acceptance: all blocking criteria passed"
                                    : ("acceptance: " + std::to_string(failures) + " blocking criteria failed").c_str());
  return failures == 0 ? 0 : 1;
}
