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

#include "arcorpus/bpe.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "arcorpus/errors.hpp"
#include "arcorpus/utf8.hpp"

namespace arcorpus {

std::string_view to_string(BaseUnit unit) { return unit == BaseUnit::Bytes ? "bytes" : "scalars"; }

BaseUnit base_unit_from_string(std::string_view name) {
  if (name == "bytes") return BaseUnit::Bytes;
  if (name == "scalars") return BaseUnit::Scalars;
  throw ConfigError("unknown base unit '" + std::string(name) + "'");
}

BpeVocab::BpeVocab(BaseUnit unit, std::vector<std::string> extra_bases) : unit_(unit) {
  if (unit == BaseUnit::Bytes && !extra_bases.empty()) {
    throw ConfigError("byte vocab cannot carry extra base units");
  }
  id_to_token_.reserve(256 + extra_bases.size());
  for (int b = 0; b < 256; ++b) id_to_token_.emplace_back(1, static_cast<char>(b));
  for (auto& s : extra_bases) {
    if (s.size() < 2 || utf8::scalar_count(s) != 1 || !utf8::is_valid(s)) {
      throw FormatError("extra base unit must be one multi-byte scalar");
    }
    id_to_token_.push_back(std::move(s));
  }
  for (TokenId id = 0; id < id_to_token_.size(); ++id) {
    if (!token_to_id_.emplace(id_to_token_[id], id).second) {
      throw FormatError("duplicate base unit");
    }
  }
  base_size_ = id_to_token_.size();
}

const std::string& BpeVocab::token(TokenId id) const {
  if (id >= id_to_token_.size()) throw UnknownId("unknown token id " + std::to_string(id));
  return id_to_token_[id];
}

std::optional<TokenId> BpeVocab::id_of(std::string_view symbol) const {
  auto it = token_to_id_.find(std::string(symbol));
  if (it == token_to_id_.end()) return std::nullopt;
  return it->second;
}

TokenId BpeVocab::add_merge(TokenId left, TokenId right) {
  if (left >= size() || right >= size()) throw UnknownId("merge refers to an unknown id");
  if (ranks_.count(key(left, right))) throw FormatError("merge listed twice");
  const auto id = static_cast<TokenId>(id_to_token_.size());
  std::string symbol = id_to_token_[left] + id_to_token_[right];
  // Two different merges can spell the same bytes; the first id keeps the
  // string lookup.
  token_to_id_.emplace(symbol, id);
  id_to_token_.push_back(std::move(symbol));
  ranks_.emplace(key(left, right), static_cast<TokenId>(merges_.size()));
  merges_.emplace_back(left, right);
  return id;
}

std::vector<TokenId> base_ids(std::string_view token, const BpeVocab& vocab) {
  std::vector<TokenId> ids;
  ids.reserve(token.size());
  if (vocab.unit() == BaseUnit::Bytes || vocab.base_size() == 256) {
    for (char c : token) ids.push_back(static_cast<unsigned char>(c));
    return ids;
  }
  for (size_t i = 0; i < token.size();) {
    const auto lead = static_cast<unsigned char>(token[i]);
    const size_t len = std::min(utf8::sequence_length(lead), token.size() - i);
    if (len > 1) {
      if (auto id = vocab.id_of(token.substr(i, len)); id && *id < vocab.base_size()) {
        ids.push_back(*id);
        i += len;
        continue;
      }
    }
    for (size_t k = 0; k < len; ++k) ids.push_back(static_cast<unsigned char>(token[i + k]));
    i += len;
  }
  return ids;
}

namespace {

void apply_merge(std::vector<TokenId>& syms, TokenId left, TokenId right, TokenId merged) {
  size_t w = 0;
  for (size_t r = 0; r < syms.size();) {
    if (r + 1 < syms.size() && syms[r] == left && syms[r + 1] == right) {
      syms[w++] = merged;
      r += 2;
    } else {
      syms[w++] = syms[r++];
    }
  }
  syms.resize(w);
}

bool has_pair(const std::vector<TokenId>& syms, TokenId left, TokenId right) {
  for (size_t i = 0; i + 1 < syms.size(); ++i) {
    if (syms[i] == left && syms[i + 1] == right) return true;
  }
  return false;
}

std::uint64_t pair_key(TokenId l, TokenId r) { return (std::uint64_t(l) << 32) | r; }

}  // namespace

std::vector<TokenId> encode_token(std::string_view token, const BpeVocab& vocab) {
  std::vector<TokenId> syms = base_ids(token, vocab);
  if (vocab.merges().empty()) return syms;
  for (;;) {
    std::int64_t best = -1;
    for (size_t i = 0; i + 1 < syms.size(); ++i) {
      const std::int64_t r = vocab.rank(syms[i], syms[i + 1]);
      if (r >= 0 && (best < 0 || r < best)) best = r;
    }
    if (best < 0) break;
    const auto [l, r] = vocab.merges()[static_cast<size_t>(best)];
    apply_merge(syms, l, r, static_cast<TokenId>(vocab.base_size() + static_cast<size_t>(best)));
  }
  return syms;
}

void BpeTrainer::add(std::string_view token, std::uint64_t count) {
  if (token.empty() || count == 0) return;
  auto it = counts_.find(token);
  if (it == counts_.end()) {
    counts_.emplace(std::string(token), count);
  } else {
    it->second += count;
  }
}

void BpeTrainer::add_text(std::string_view text, const Segmenter& segmenter) {
  for (const auto& tok : segmenter.segment(text)) add(tok);
}

void BpeTrainer::merge_counts(const BpeTrainer& other) {
  for (const auto& [tok, n] : other.counts_) add(tok, n);
}

BpeVocab BpeTrainer::train(size_t target_merges, BaseUnit unit) const {
  if (counts_.empty()) throw EmptyCorpus("BPE training corpus is empty");

  std::vector<std::string> extras;
  if (unit == BaseUnit::Scalars) {
    std::set<std::string> seen;
    for (const auto& [tok, _] : counts_) {
      for (size_t i = 0; i < tok.size();) {
        const size_t len = std::min(utf8::sequence_length(static_cast<unsigned char>(tok[i])),
                                    tok.size() - i);
        if (len > 1 && utf8::is_valid(std::string_view(tok).substr(i, len))) {
          seen.insert(tok.substr(i, len));
        }
        i += len;
      }
    }
    extras.assign(seen.begin(), seen.end());
  }
  BpeVocab vocab(unit, std::move(extras));

  struct Word {
    std::vector<TokenId> syms;
    std::int64_t count;
  };
  std::vector<Word> words;
  words.reserve(counts_.size());
  for (const auto& [tok, n] : counts_) words.push_back({base_ids(tok, vocab), static_cast<std::int64_t>(n)});

  std::unordered_map<std::uint64_t, std::int64_t> pair_counts;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> where;
  auto add_pairs = [&](std::uint32_t w, std::int64_t sign, bool index_only_new, TokenId fresh) {
    const auto& syms = words[w].syms;
    for (size_t i = 0; i + 1 < syms.size(); ++i) {
      const auto k = pair_key(syms[i], syms[i + 1]);
      auto& c = pair_counts[k];
      c += sign * words[w].count;
      if (c == 0) pair_counts.erase(k);
      if (sign > 0 && (!index_only_new || syms[i] == fresh || syms[i + 1] == fresh)) {
        where[k].push_back(w);
      }
    }
  };
  for (std::uint32_t w = 0; w < words.size(); ++w) add_pairs(w, +1, false, 0);

  std::vector<std::uint32_t> stamp(words.size(), 0);
  for (std::uint32_t step = 1; vocab.merges().size() < target_merges; ++step) {
    std::uint64_t best_key = 0;
    std::int64_t best_count = 0;
    for (const auto& [k, c] : pair_counts) {
      if (c < best_count) continue;
      if (c > best_count) {
        best_key = k;
        best_count = c;
        continue;
      }
      const auto& bl = vocab.token(static_cast<TokenId>(best_key >> 32));
      const auto& br = vocab.token(static_cast<TokenId>(best_key & 0xFFFFFFFFu));
      const auto& l = vocab.token(static_cast<TokenId>(k >> 32));
      const auto& r = vocab.token(static_cast<TokenId>(k & 0xFFFFFFFFu));
      if (std::tie(l, r) < std::tie(bl, br)) best_key = k;
    }
    if (best_count < 2) break;

    const auto left = static_cast<TokenId>(best_key >> 32);
    const auto right = static_cast<TokenId>(best_key & 0xFFFFFFFFu);
    const TokenId merged = vocab.add_merge(left, right);
    auto hits = std::move(where[best_key]);
    where.erase(best_key);
    for (std::uint32_t w : hits) {
      if (stamp[w] == step) continue;
      stamp[w] = step;
      if (!has_pair(words[w].syms, left, right)) continue;
      add_pairs(w, -1, false, 0);
      apply_merge(words[w].syms, left, right, merged);
      add_pairs(w, +1, true, merged);
    }
  }
  return vocab;
}

BpeVocab bpe_train(std::span<const std::string> tokens, size_t target_merges, BaseUnit unit) {
  BpeTrainer trainer;
  for (const auto& t : tokens) trainer.add(t);
  return trainer.train(target_merges, unit);
}

std::vector<TokenId> bpe_encode(std::string_view text, const BpeVocab& vocab,
                                const WhitespaceSegmenter& segmenter) {
  std::vector<TokenId> out;
  auto emit = [&](std::string_view piece) {
    if (piece.empty()) return;
    const auto ids = encode_token(piece, vocab);
    out.insert(out.end(), ids.begin(), ids.end());
  };
  size_t at = 0;
  for (std::string_view span : segmenter.spans(text)) {
    const auto start = static_cast<size_t>(span.data() - text.data());
    emit(text.substr(at, start - at));
    emit(span);
    at = start + span.size();
  }
  emit(text.substr(at));
  return out;
}

std::string bpe_decode(std::span<const TokenId> ids, const BpeVocab& vocab) {
  std::string out;
  for (TokenId id : ids) out += vocab.token(id);
  utf8::validate(out);
  return out;
}

namespace {

std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (char c : bytes) {
    const auto b = static_cast<unsigned char>(c);
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::string from_hex(std::string_view hex, size_t line_no) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError("vocab line " + std::to_string(line_no) + ": bad hex digit");
  };
  if (hex.empty() || hex.size() % 2 != 0) {
    throw FormatError("vocab line " + std::to_string(line_no) + ": bad hex length");
  }
  std::string out;
  for (size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<char>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
  }
  return out;
}

constexpr std::string_view kMagic = "arcorpus-bpe v1";

}  // namespace

std::string serialize_vocab(const BpeVocab& vocab) {
  std::string out(kMagic);
  out += " unit=" + std::string(to_string(vocab.unit()));
  out += " merges=" + std::to_string(vocab.merges().size());
  if (vocab.unit() == BaseUnit::Scalars) out += " bases=" + std::to_string(vocab.extra_bases().size());
  out += '\n';
  for (const auto& b : vocab.extra_bases()) out += to_hex(b) + '\n';
  for (const auto& [l, r] : vocab.merges()) {
    out += to_hex(vocab.token(l)) + ' ' + to_hex(vocab.token(r)) + '\n';
  }
  return out;
}

BpeVocab parse_vocab(std::string_view contents) {
  std::istringstream in{std::string(contents)};
  std::string header;
  if (!std::getline(in, header) || header.rfind(kMagic, 0) != 0) {
    throw FormatError("vocab: missing '" + std::string(kMagic) + "' header");
  }
  std::istringstream hs(header.substr(kMagic.size()));
  std::string field;
  std::optional<BaseUnit> unit;
  std::optional<size_t> merges;
  size_t bases = 0;
  while (hs >> field) {
    const size_t eq = field.find('=');
    if (eq == std::string::npos) throw FormatError("vocab: bad header field '" + field + "'");
    const std::string k = field.substr(0, eq);
    const std::string v = field.substr(eq + 1);
    try {
      if (k == "unit") {
        unit = base_unit_from_string(v);
      } else if (k == "merges") {
        merges = std::stoul(v);
      } else if (k == "bases") {
        bases = std::stoul(v);
      } else {
        throw FormatError("vocab: unknown header field '" + k + "'");
      }
    } catch (const std::logic_error&) {
      throw FormatError("vocab: bad header value '" + field + "'");
    } catch (const ConfigError& e) {
      throw FormatError(std::string("vocab: ") + e.what());
    }
  }
  if (!unit || !merges) throw FormatError("vocab: header needs unit= and merges=");
  if (*unit == BaseUnit::Bytes && bases != 0) throw FormatError("vocab: byte vocab with bases");

  size_t line_no = 1;
  std::string line;
  std::vector<std::string> extras;
  for (size_t i = 0; i < bases; ++i) {
    ++line_no;
    if (!std::getline(in, line)) throw FormatError("vocab: truncated base list");
    extras.push_back(from_hex(line, line_no));
  }
  BpeVocab vocab(*unit, std::move(extras));
  for (size_t i = 0; i < *merges; ++i) {
    ++line_no;
    if (!std::getline(in, line)) throw FormatError("vocab: truncated merge list");
    const size_t sp = line.find(' ');
    if (sp == std::string::npos) {
      throw FormatError("vocab line " + std::to_string(line_no) + ": expected two symbols");
    }
    const auto l = vocab.id_of(from_hex(std::string_view(line).substr(0, sp), line_no));
    const auto r = vocab.id_of(from_hex(std::string_view(line).substr(sp + 1), line_no));
    if (!l || !r) {
      throw FormatError("vocab line " + std::to_string(line_no) + ": merge uses an unknown symbol");
    }
    vocab.add_merge(*l, *r);
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw FormatError("vocab: trailing data after merge list");
  }
  return vocab;
}

void save_vocab(const BpeVocab& vocab, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write vocab " + path);
  const std::string text = serialize_vocab(vocab);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path);
}

BpeVocab load_vocab(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read vocab " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_vocab(buf.str());
}

}  // namespace arcorpus
