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

#include "arcorpus/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "arcorpus/bpe.hpp"
#include "arcorpus/charset.hpp"
#include "arcorpus/config.hpp"
#include "arcorpus/pipeline.hpp"
#include "arcorpus/segmenter.hpp"
#include "arcorpus/stats.hpp"
#include "arcorpus/utf8.hpp"
#include "json.hpp"

namespace arcorpus::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr size_t kMaxReportedPositions = 100;

void add_text_options(CLI::App* app, TextOptions& t, bool patterns) {
  app->add_option("--config", t.config, "Cleaning config (JSON)");
  app->add_option("--charset", t.charset, "Charset override file (grapheme TAB arpabet TAB class)");
  if (patterns) app->add_option("--patterns", t.patterns, "Pattern override file (name TAB regex)");
  app->add_option("--segmenter-cmd", t.segmenter_cmd,
                  "External segmenter command (stdin text, stdout space-separated segments)");
}

}  // namespace

Command parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Arabic corpus cleaning, statistics and BPE toolkit", "arcorpus"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print tool and charset-table version");

  CleanCmd clean;
  auto* c = app.add_subcommand("clean", "Clean every source of a manifest into JSONL shards");
  c->add_option("--manifest", clean.manifest, "Source manifest (JSON)")->required();
  c->add_option("--out", clean.out, "Output directory")->required();
  c->add_option("--shard-size", clean.shard_size, "Shard size in bytes")->check(CLI::PositiveNumber);
  c->add_option("--workers", clean.workers, "Worker threads (0: all cores)");
  add_text_options(c, clean.text, true);

  StatsCmd stats;
  auto* s = app.add_subcommand("stats", "Per-source statistics of shards or a statistics table");
  s->add_option("--in", stats.in, "Shard directory, shard file or .tsv statistics table")->required();
  s->add_option("--out", stats.out, "Directory for report.tsv and report.md");
  s->add_option("--format", stats.format, "Format printed to stdout")
      ->check(CLI::IsMember({"tsv", "markdown"}));
  add_text_options(s, stats.text, false);

  BpeTrainCmd train;
  auto* b = app.add_subcommand("bpe-train", "Learn a byte-pair vocabulary from cleaned text");
  b->add_option("--in", train.in, "Shard directory, shard file or text file")->required();
  b->add_option("--merges", train.merges, "Number of merges to learn")->required();
  b->add_option("--out", train.out, "Vocab file to write")->required();
  b->add_option("--unit", train.unit, "Base unit")->check(CLI::IsMember({"bytes", "scalars"}));
  add_text_options(b, train.text, false);

  EncodeCmd enc;
  auto* e = app.add_subcommand("encode", "Text (or shard text fields) to token ids, one line each");
  e->add_option("--vocab", enc.vocab, "Vocab file")->required();
  e->add_option("--in", enc.in, "Input text or .jsonl shard")->required();
  e->add_option("--out", enc.out, "Output id file")->required();

  DecodeCmd dec;
  auto* d = app.add_subcommand("decode", "Token id lines back to text");
  d->add_option("--vocab", dec.vocab, "Vocab file")->required();
  d->add_option("--in", dec.in, "Input id file")->required();
  d->add_option("--out", dec.out, "Output text file")->required();

  ValidateCharsetCmd val;
  auto* v = app.add_subcommand("validate-charset", "Report scalars outside the allowed character set");
  v->add_option("--in", val.in, "File or shard directory")->required();
  add_text_options(v, val.text, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return HelpCmd{app.help()};
  } catch (const CLI::ParseError& ex) {
    throw UsageError(ex.what());
  }

  if (version) return VersionCmd{};
  if (c->parsed()) return clean;
  if (s->parsed()) return stats;
  if (b->parsed()) return train;
  if (e->parsed()) return enc;
  if (d->parsed()) return dec;
  if (v->parsed()) return val;
  throw UsageError("a subcommand is required (see --help)");
}

std::string version_string() {
  return std::string("arcorpus ") + ARCORPUS_VERSION + " (charset " +
         std::string(kDefaultCharsetVersion) + ")";
}

namespace {

struct TextContext {
  CleanConfig cfg;
  std::unique_ptr<CharsetTable> charset;
  std::unique_ptr<Segmenter> segmenter;
};

TextContext load_text_context(const TextOptions& t) {
  TextContext ctx;
  if (t.config) ctx.cfg = load_config(*t.config);
  if (t.patterns) ctx.cfg.patterns = load_patterns(*t.patterns);
  ctx.charset = std::make_unique<CharsetTable>(t.charset ? load_charset_file(*t.charset)
                                                         : build_default_charset());
  if (t.segmenter_cmd) {
    ctx.segmenter = std::make_unique<ExternalSegmenter>(*t.segmenter_cmd);
  } else {
    ctx.segmenter = std::make_unique<WhitespaceSegmenter>(ctx.cfg.mask, ctx.cfg.chars);
  }
  return ctx;
}

// Shard files under `path` (a directory) in name order, or `path` itself.
std::vector<fs::path> input_files(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("no such file or directory: " + path.string());
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

bool is_jsonl(const fs::path& p) { return p.extension() == ".jsonl"; }

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  return in;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  return out;
}

// Calls fn(text, line_no, source) for each shard record, or each line of a
// plain text file (source empty).
template <typename Fn>
void for_each_text(const fs::path& file, Fn&& fn) {
  auto in = open_in(file);
  std::string line;
  size_t line_no = 0;
  const bool jsonl = is_jsonl(file);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!jsonl) {
      fn(line, line_no, std::string());
      continue;
    }
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception&) {
      throw FormatError(file.string() + ":" + std::to_string(line_no) + ": malformed JSON");
    }
    if (!rec.is_object() || !rec.contains("text") || !rec["text"].is_string()) {
      throw FormatError(file.string() + ":" + std::to_string(line_no) + ": missing 'text'");
    }
    const std::string source = rec.contains("source") && rec["source"].is_string()
                                   ? rec["source"].get<std::string>()
                                   : file.stem().string();
    fn(rec["text"].get<std::string>(), line_no, source);
  }
}

int cmd_clean(const CleanCmd& cmd, std::ostream& out, std::ostream& err) {
  const TextContext ctx = load_text_context(cmd.text);
  const SourceManifest manifest = load_manifest(cmd.manifest);
  PipelineOptions opts;
  opts.shard_size = cmd.shard_size;
  opts.workers = cmd.workers;
  if (cmd.text.segmenter_cmd) opts.segmenter = ctx.segmenter.get();
  const RunResult r = run_pipeline(manifest, ctx.cfg, *ctx.charset, cmd.out, opts);
  for (const auto& e : r.errors) err << "warning: " << e << '\n';
  const SourceStats t = r.stats.totals();
  out << "sources: " << r.source_order.size() << "\n"
      << "documents: " << t.documents << "\n"
      << "written: " << (t.documents - t.dropped) << "\n"
      << "dropped: " << t.dropped << "\n"
      << "shards: " << r.shards.size() << "\n";
  return kOk;
}

int cmd_stats(const StatsCmd& cmd, std::ostream& out) {
  CorpusStats stats;
  std::vector<std::string> order;
  if (fs::path(cmd.in).extension() == ".tsv") {
    auto fx = load_stats_fixture(cmd.in);
    stats = std::move(fx.stats);
    order = std::move(fx.order);
  } else {
    const TextContext ctx = load_text_context(cmd.text);
    for (const auto& file : input_files(cmd.in)) {
      for_each_text(file, [&](const std::string& text, size_t, const std::string& source) {
        const std::string name = source.empty() ? file.stem().string() : source;
        if (!stats.sources().count(name)) order.push_back(name);
        stats.source(name).add(doc_stats(text, *ctx.segmenter));
      });
    }
  }
  if (cmd.out) {
    fs::create_directories(*cmd.out);
    open_out(fs::path(*cmd.out) / "report.tsv") << render_report(stats, ReportFormat::Tsv, order);
    open_out(fs::path(*cmd.out) / "report.md") << render_report(stats, ReportFormat::Markdown, order);
  } else {
    out << render_report(stats, cmd.format == "markdown" ? ReportFormat::Markdown : ReportFormat::Tsv,
                         order);
  }
  return kOk;
}

int cmd_bpe_train(const BpeTrainCmd& cmd, std::ostream& out) {
  const TextContext ctx = load_text_context(cmd.text);
  BpeTrainer trainer;
  for (const auto& file : input_files(cmd.in)) {
    for_each_text(file, [&](const std::string& text, size_t, const std::string&) {
      utf8::validate(text);
      trainer.add_text(text, *ctx.segmenter);
    });
  }
  const BpeVocab vocab = trainer.train(cmd.merges, base_unit_from_string(cmd.unit));
  save_vocab(vocab, cmd.out);
  out << "merges: " << vocab.merges().size() << "\nvocab size: " << vocab.size() << '\n';
  return kOk;
}

int cmd_encode(const EncodeCmd& cmd) {
  const BpeVocab vocab = load_vocab(cmd.vocab);
  auto o = open_out(cmd.out);
  for_each_text(cmd.in, [&](const std::string& text, size_t, const std::string&) {
    utf8::validate(text);
    const auto ids = bpe_encode(text, vocab);
    for (size_t i = 0; i < ids.size(); ++i) o << (i ? " " : "") << ids[i];
    o << '\n';
  });
  if (!o) throw IoError("write failed for " + cmd.out);
  return kOk;
}

int cmd_decode(const DecodeCmd& cmd) {
  const BpeVocab vocab = load_vocab(cmd.vocab);
  auto in = open_in(cmd.in);
  auto o = open_out(cmd.out);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<TokenId> ids;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit) || tok.size() > 10) {
        throw FormatError(cmd.in + ":" + std::to_string(line_no) + ": bad id '" + tok + "'");
      }
      const auto v = std::stoull(tok);
      if (v > 0xFFFFFFFFull) throw UnknownId("unknown token id " + tok);
      ids.push_back(static_cast<TokenId>(v));
    }
    o << bpe_decode(ids, vocab) << '\n';
  }
  if (!o) throw IoError("write failed for " + cmd.out);
  return kOk;
}

std::string hex_scalar(char32_t ch) {
  std::ostringstream s;
  s << "U+" << std::uppercase << std::hex << std::setw(4) << std::setfill('0')
    << static_cast<std::uint32_t>(ch);
  return s.str();
}

}  // namespace

ValidationReport validate_charset_path(const std::string& path, const TextOptions& text) {
  const TextContext ctx = load_text_context(text);
  ValidationReport report;
  for (const auto& file : input_files(path)) {
    auto check = [&](std::string_view body, size_t line_no) {
      if (auto bad = utf8::first_invalid(body)) {
        throw InvalidUtf8(file.string() + ":" + std::to_string(line_no) + ": invalid UTF-8 at byte " +
                              std::to_string(*bad),
                          *bad);
      }
      report.scalars += utf8::scalar_count(body);
      for (const auto& hit : find_noisy(body, *ctx.charset, ctx.cfg)) {
        if (report.positions.size() < kMaxReportedPositions) {
          report.positions.push_back(file.string() + ":" + std::to_string(line_no) + ":" +
                                     std::to_string(hit.offset) + " " + hex_scalar(hit.ch));
        }
        ++report.noisy;
      }
    };
    if (is_jsonl(file)) {
      for_each_text(file, [&](const std::string& t, size_t line_no, const std::string&) { check(t, line_no); });
    } else {
      auto in = open_in(file);
      std::string line;
      size_t line_no = 0;
      while (std::getline(in, line)) check(line, ++line_no);
    }
  }
  return report;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  return std::visit(
      [&](const auto& c) -> int {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CleanCmd>) {
          return cmd_clean(c, out, err);
        } else if constexpr (std::is_same_v<T, StatsCmd>) {
          return cmd_stats(c, out);
        } else if constexpr (std::is_same_v<T, BpeTrainCmd>) {
          return cmd_bpe_train(c, out);
        } else if constexpr (std::is_same_v<T, EncodeCmd>) {
          return cmd_encode(c);
        } else if constexpr (std::is_same_v<T, DecodeCmd>) {
          return cmd_decode(c);
        } else if constexpr (std::is_same_v<T, ValidateCharsetCmd>) {
          const auto report = validate_charset_path(c.in, c.text);
          out << "scalars: " << report.scalars << "\nnoisy: " << report.noisy << '\n';
          for (const auto& p : report.positions) out << p << '\n';
          return report.noisy == 0 ? kOk : kValidationFailed;
        } else if constexpr (std::is_same_v<T, VersionCmd>) {
          out << version_string() << '\n';
          return kOk;
        } else {
          out << c.text;
          return kOk;
        }
      },
      cmd);
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(args), out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailed;
  }
}

}  // namespace arcorpus::cli
