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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace arcorpus {

enum class CharClass : std::uint8_t {
  Consonant,
  LongVowel,
  ShortVowel,
  DiacriticalMark,
  HamzaForm,
  ArabicPunct,  // any member of the kept punctuation set
  AsciiDigit,
  Whitespace,
  Emoji,
  MaskTagChar,  // only produced by context-aware scans (see scan_classes)
  Noisy,
};

std::string_view to_string(CharClass c);
std::optional<CharClass> char_class_from_string(std::string_view name);

// Per-run knobs that change how scalars outside the table are classified.
struct CharPolicy {
  std::u32string kept_punctuation = U"!.؟";
  bool preserve_emoji = true;
};

struct CharsetEntry {
  char32_t grapheme;
  std::string arpabet;  // empty when the table lists "-"
  std::string description;
  CharClass cls;
};

// The canonical Arabic inventory. Immutable once built; share freely across
// threads.
class CharsetTable {
 public:
  CharsetTable(std::vector<CharsetEntry> entries, std::string version);

  const std::vector<CharsetEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  const std::string& version() const { return version_; }

  const CharsetEntry* find(char32_t ch) const {
    if (ch < bmp_index_.size()) {
      auto idx = bmp_index_[ch];
      return idx == kNone ? nullptr : &entries_[idx];
    }
    auto it = astral_index_.find(ch);
    return it == astral_index_.end() ? nullptr : &entries_[it->second];
  }
  bool contains(char32_t ch) const { return find(ch) != nullptr; }

  // Total over every scalar value.
  CharClass classify(char32_t ch, const CharPolicy& policy) const;

  std::optional<std::string> arpabet_of(char32_t ch) const;

 private:
  static constexpr std::uint16_t kNone = 0xFFFF;
  std::vector<CharsetEntry> entries_;
  std::string version_;
  std::vector<std::uint16_t> bmp_index_;
  std::unordered_map<char32_t, std::uint16_t> astral_index_;
};

// Version tag of the compiled-in table.
inline constexpr std::string_view kDefaultCharsetVersion = "ar44-1";

const CharsetTable& default_charset();
CharsetTable build_default_charset();

// Parses an override table: one record per line, grapheme TAB arpabet TAB
// class. Blank lines and lines starting with '#' are skipped; "-" marks an
// empty arpabet. Identical duplicate rows collapse; conflicting ones throw
// ConfigError.
CharsetTable parse_charset_file(std::string_view contents, std::string version);
CharsetTable load_charset_file(const std::string& path);

bool is_ascii_digit(char32_t ch);
bool is_space(char32_t ch);
// Emoji ranges, Unicode 15.0 subset: pictographic blocks plus the joiner,
// VS16, keycap, skin-tone and tag components used inside emoji sequences.
bool is_emoji(char32_t ch);
// ASCII punctuation and symbols, Latin-1 punctuation, General Punctuation,
// Arabic punctuation, CJK and fullwidth punctuation.
bool is_punctuation(char32_t ch);
// U+0621..U+063A and U+0641..U+064A.
bool is_arabic_letter(char32_t ch);

// Length of the tag literal starting at `pos`, or 0.
inline size_t match_tag(std::string_view text, size_t pos, std::span<const std::string> tags) {
  if (pos >= text.size()) return 0;
  const char c = text[pos];
  for (const auto& tag : tags) {
    if (!tag.empty() && tag[0] == c && text.substr(pos).starts_with(tag)) return tag.size();
  }
  return 0;
}

// Walks `text` (valid UTF-8) and reports every scalar with its class. Scalars
// inside one of `tags` report MaskTagChar.
void scan_classes(std::string_view text, const CharsetTable& table, const CharPolicy& policy,
                  std::span<const std::string> tags,
                  const std::function<void(size_t offset, char32_t ch, CharClass cls)>& visit);

}  // namespace arcorpus
