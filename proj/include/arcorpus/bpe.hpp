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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arcorpus/segmenter.hpp"

namespace arcorpus {

using TokenId = std::uint32_t;

enum class BaseUnit { Bytes, Scalars };

std::string_view to_string(BaseUnit unit);
BaseUnit base_unit_from_string(std::string_view name);

// Learned byte-pair vocabulary.
//
// Ids: the 256 single bytes come first in byte order, then (scalar mode
// only) the observed multi-byte scalars in byte order, then one id per merge
// in acquisition order. Every symbol is stored as its raw byte sequence.
class BpeVocab {
 public:
  BpeVocab() : BpeVocab(BaseUnit::Bytes, {}) {}
  BpeVocab(BaseUnit unit, std::vector<std::string> extra_bases);

  BaseUnit unit() const { return unit_; }
  size_t size() const { return id_to_token_.size(); }
  size_t base_size() const { return base_size_; }
  const std::vector<std::pair<TokenId, TokenId>>& merges() const { return merges_; }
  // Multi-byte scalars added as base units (scalar mode).
  std::span<const std::string> extra_bases() const {
    return std::span<const std::string>(id_to_token_).subspan(256, base_size_ - 256);
  }

  const std::string& token(TokenId id) const;
  std::optional<TokenId> id_of(std::string_view symbol) const;

  // Appends merge (left, right); returns the new symbol's id. Both parts
  // must already exist and their concatenation must be new.
  TokenId add_merge(TokenId left, TokenId right);

  // Rank of merging (left, right), or -1.
  std::int64_t rank(TokenId left, TokenId right) const {
    auto it = ranks_.find(key(left, right));
    return it == ranks_.end() ? -1 : static_cast<std::int64_t>(it->second);
  }

  bool operator==(const BpeVocab& other) const {
    return unit_ == other.unit_ && id_to_token_ == other.id_to_token_ && merges_ == other.merges_;
  }

 private:
  static std::uint64_t key(TokenId l, TokenId r) { return (std::uint64_t(l) << 32) | r; }

  BaseUnit unit_;
  size_t base_size_ = 0;
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, TokenId> token_to_id_;
  std::vector<std::pair<TokenId, TokenId>> merges_;
  std::unordered_map<std::uint64_t, TokenId> ranks_;
};

// Accumulates token frequencies, then learns merges. Merges never cross
// token boundaries.
class BpeTrainer {
 public:
  void add(std::string_view token, std::uint64_t count = 1);
  void add_text(std::string_view text, const Segmenter& segmenter);
  void merge_counts(const BpeTrainer& other);
  size_t distinct_tokens() const { return counts_.size(); }

  // Repeatedly merges the most frequent adjacent pair; ties go to the pair
  // whose (left bytes, right bytes) sorts first. Stops after `target_merges`
  // merges or once no pair occurs at least twice. Throws EmptyCorpus.
  BpeVocab train(size_t target_merges, BaseUnit unit = BaseUnit::Bytes) const;

 private:
  std::map<std::string, std::uint64_t, std::less<>> counts_;
};

BpeVocab bpe_train(std::span<const std::string> tokens, size_t target_merges,
                   BaseUnit unit = BaseUnit::Bytes);

// Base-unit ids for one token before any merge (bytes, or scalars with byte
// fallback for scalars the vocab does not know).
std::vector<TokenId> base_ids(std::string_view token, const BpeVocab& vocab);

// Applies merges to one token in training order.
std::vector<TokenId> encode_token(std::string_view token, const BpeVocab& vocab);

// Encodes segmenter tokens and the whitespace between them, so decoding
// restores `text` exactly.
std::vector<TokenId> bpe_encode(std::string_view text, const BpeVocab& vocab,
                                const WhitespaceSegmenter& segmenter = WhitespaceSegmenter());

// Throws UnknownId or InvalidUtf8.
std::string bpe_decode(std::span<const TokenId> ids, const BpeVocab& vocab);

// Vocab file: header line, optional base lines, one merge per line as two
// space-separated lowercase hex byte strings.
std::string serialize_vocab(const BpeVocab& vocab);
BpeVocab parse_vocab(std::string_view contents);
void save_vocab(const BpeVocab& vocab, const std::string& path);
BpeVocab load_vocab(const std::string& path);

}  // namespace arcorpus
