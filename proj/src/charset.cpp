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

#include "arcorpus/charset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "arcorpus/errors.hpp"
#include "arcorpus/utf8.hpp"

namespace arcorpus {

namespace {

struct Row {
  char32_t grapheme;
  const char* arpabet;
  const char* description;
  CharClass cls;
};

using C = CharClass;

// Table rows in code point order. The hamza-carrier rows that appear twice in
// the published table are listed once.
constexpr Row kDefaultRows[] = {
    {U'ء', "E", "hamza", C::HamzaForm},
    {U'آ', "AE:", "alif maddah", C::HamzaForm},
    {U'أ', "E", "alef + hamza above", C::HamzaForm},
    {U'ؤ', "E", "waw + hamza above", C::HamzaForm},
    {U'إ', "E", "alef + hamza below", C::HamzaForm},
    {U'ئ', "E", "ya + hamza above", C::HamzaForm},
    {U'ا', "AE/E", "alif", C::LongVowel},
    {U'ب', "B", "ba", C::Consonant},
    {U'ة', "T/H", "ta marbuta", C::Consonant},
    {U'ت', "T/H", "ta", C::Consonant},
    {U'ث', "TH", "tha", C::Consonant},
    {U'ج', "ZH", "jeem", C::Consonant},
    {U'ح', "HH", "ha", C::Consonant},
    {U'خ', "KH", "kha", C::Consonant},
    {U'د', "D", "dal", C::Consonant},
    {U'ذ', "DH", "Thal", C::Consonant},
    {U'ر', "R", "ra", C::Consonant},
    {U'ز', "ZH", "zay", C::Consonant},
    {U'س', "S", "seen", C::Consonant},
    {U'ش', "SH", "sheen", C::Consonant},
    {U'ص', "SS", "sad", C::Consonant},
    {U'ض', "DD", "dad", C::Consonant},
    {U'ط', "TT", "ta", C::Consonant},
    {U'ظ', "DH2", "za", C::Consonant},
    {U'ع', "AI", "ayn", C::Consonant},
    {U'غ', "GH", "ghayn", C::Consonant},
    {U'ف', "F", "fa", C::Consonant},
    {U'ق', "Q", "qaf", C::Consonant},
    {U'ك', "KH", "kaf", C::Consonant},
    {U'ل', "L", "lam", C::Consonant},
    {U'م', "M", "meem", C::Consonant},
    {U'ن', "N", "noon", C::Consonant},
    {U'ه', "HH", "ha", C::Consonant},
    {U'و', "W", "waw", C::LongVowel},
    {U'ى', "AE", "alif maksura", C::LongVowel},
    {U'ي', "Y", "ya", C::LongVowel},
    {U'ً', "AE N", "fathathan", C::DiacriticalMark},
    {U'ٌ', "UH N", "dammathan", C::DiacriticalMark},
    {U'ٍ', "IH N", "kasrathan", C::DiacriticalMark},
    {U'َ', "AE", "fathah", C::ShortVowel},
    {U'ُ', "UH", "damma", C::ShortVowel},
    {U'ِ', "IH", "kasra", C::ShortVowel},
    {U'ّ', "", "tashdeed", C::DiacriticalMark},
    {U'ْ', "", "sakun", C::DiacriticalMark},
};

constexpr std::pair<CharClass, std::string_view> kClassNames[] = {
    {C::Consonant, "consonant"},
    {C::LongVowel, "long_vowel"},
    {C::ShortVowel, "short_vowel"},
    {C::DiacriticalMark, "diacritical_mark"},
    {C::HamzaForm, "hamza_form"},
    {C::ArabicPunct, "punctuation"},
    {C::AsciiDigit, "digit"},
    {C::Whitespace, "whitespace"},
    {C::Emoji, "emoji"},
    {C::MaskTagChar, "mask_tag"},
    {C::Noisy, "noisy"},
};

struct Range {
  char32_t lo, hi;
};

bool in_ranges(char32_t ch, std::span<const Range> ranges) {
  auto it = std::upper_bound(ranges.begin(), ranges.end(), ch,
                             [](char32_t c, const Range& r) { return c < r.lo; });
  if (it == ranges.begin()) return false;
  --it;
  return ch <= it->hi;
}

// Sorted, non-overlapping.
constexpr Range kEmojiRanges[] = {
    {0x200D, 0x200D},    // zero width joiner
    {0x20E3, 0x20E3},    // combining enclosing keycap
    {0x231A, 0x231B},    {0x23E9, 0x23F3}, {0x23F8, 0x23FA},
    {0x25FD, 0x25FE},    {0x2600, 0x27BF},  // misc symbols, dingbats
    {0x2B05, 0x2B07},    {0x2B1B, 0x2B1C}, {0x2B50, 0x2B50}, {0x2B55, 0x2B55},
    {0xFE0F, 0xFE0F},    // variation selector 16
    {0x1F000, 0x1FAFF},  // mahjong .. symbols and pictographs ext-A
    {0xE0020, 0xE007F},  // tag sequence components
};

constexpr Range kPunctRanges[] = {
    {0x21, 0x2F},     {0x3A, 0x40},     {0x5B, 0x60},     {0x7B, 0x7E},
    {0xA1, 0xA1},     {0xA7, 0xA7},     {0xAB, 0xAB},     {0xB6, 0xB7},
    {0xBB, 0xBB},     {0xBF, 0xBF},     {0x060C, 0x060D}, {0x061B, 0x061B},
    {0x061E, 0x061F}, {0x066A, 0x066D}, {0x06D4, 0x06D4}, {0x2010, 0x2027},
    {0x2030, 0x205E}, {0x2E00, 0x2E4F}, {0x3001, 0x3003}, {0x3008, 0x3011},
    {0x3014, 0x301F}, {0xFD3E, 0xFD3F}, {0xFE10, 0xFE19}, {0xFE30, 0xFE4F},
    {0xFE50, 0xFE6B}, {0xFF01, 0xFF0F}, {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40},
    {0xFF5B, 0xFF65},
};

}  // namespace

std::string_view to_string(CharClass c) {
  for (const auto& [cls, name] : kClassNames) {
    if (cls == c) return name;
  }
  return "noisy";
}

std::optional<CharClass> char_class_from_string(std::string_view name) {
  for (const auto& [cls, n] : kClassNames) {
    if (n == name) return cls;
  }
  return std::nullopt;
}

bool is_ascii_digit(char32_t ch) { return ch >= U'0' && ch <= U'9'; }

bool is_space(char32_t ch) {
  switch (ch) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return ch >= 0x2000 && ch <= 0x200A;
  }
}

bool is_emoji(char32_t ch) {
  if (ch < 0x200D) return false;
  return in_ranges(ch, kEmojiRanges);
}

bool is_punctuation(char32_t ch) {
  if (ch < 0x80) {
    return (ch >= 0x21 && ch <= 0x2F) || (ch >= 0x3A && ch <= 0x40) || (ch >= 0x5B && ch <= 0x60) ||
           (ch >= 0x7B && ch <= 0x7E);
  }
  if (is_arabic_letter(ch)) return false;
  return in_ranges(ch, kPunctRanges);
}

bool is_arabic_letter(char32_t ch) {
  return (ch >= 0x0621 && ch <= 0x063A) || (ch >= 0x0641 && ch <= 0x064A);
}

CharsetTable::CharsetTable(std::vector<CharsetEntry> entries, std::string version)
    : entries_(std::move(entries)), version_(std::move(version)), bmp_index_(0x10000, kNone) {
  if (entries_.size() >= kNone) throw ConfigError("charset table too large");
  for (size_t i = 0; i < entries_.size(); ++i) {
    const char32_t g = entries_[i].grapheme;
    if (!utf8::is_scalar(g)) throw ConfigError("charset grapheme is not a Unicode scalar");
    if (find(g) != nullptr) {
      throw ConfigError("duplicate charset grapheme U+" + std::to_string(static_cast<unsigned>(g)));
    }
    if (g < bmp_index_.size()) {
      bmp_index_[g] = static_cast<std::uint16_t>(i);
    } else {
      astral_index_.emplace(g, static_cast<std::uint16_t>(i));
    }
  }
}

CharClass CharsetTable::classify(char32_t ch, const CharPolicy& policy) const {
  if (const auto* e = find(ch)) return e->cls;
  if (policy.kept_punctuation.find(ch) != std::u32string::npos) return CharClass::ArabicPunct;
  if (is_ascii_digit(ch)) return CharClass::AsciiDigit;
  if (is_space(ch)) return CharClass::Whitespace;
  if (policy.preserve_emoji && is_emoji(ch)) return CharClass::Emoji;
  return CharClass::Noisy;
}

std::optional<std::string> CharsetTable::arpabet_of(char32_t ch) const {
  const auto* e = find(ch);
  if (e == nullptr || e->arpabet.empty()) return std::nullopt;
  return e->arpabet;
}

CharsetTable build_default_charset() {
  std::vector<CharsetEntry> entries;
  entries.reserve(std::size(kDefaultRows));
  for (const auto& r : kDefaultRows) {
    entries.push_back({r.grapheme, r.arpabet, r.description, r.cls});
  }
  return CharsetTable(std::move(entries), std::string(kDefaultCharsetVersion));
}

const CharsetTable& default_charset() {
  static const CharsetTable table = build_default_charset();
  return table;
}

CharsetTable parse_charset_file(std::string_view contents, std::string version) {
  utf8::validate(contents);
  std::vector<CharsetEntry> entries;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= contents.size()) {
    size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const auto where = "charset line " + std::to_string(line_no) + ": ";
    const size_t t1 = line.find('\t');
    const size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos) {
      throw ConfigError(where + "expected 3 tab-separated fields");
    }
    const auto grapheme = utf8::decode(line.substr(0, t1));
    if (grapheme.size() != 1) throw ConfigError(where + "grapheme must be one scalar");
    std::string arpabet(line.substr(t1 + 1, t2 - t1 - 1));
    if (arpabet == "-") arpabet.clear();
    const auto cls = char_class_from_string(line.substr(t2 + 1));
    if (!cls || *cls == CharClass::Noisy || *cls == CharClass::MaskTagChar) {
      throw ConfigError(where + "unknown class '" + std::string(line.substr(t2 + 1)) + "'");
    }

    auto dup = std::find_if(entries.begin(), entries.end(),
                            [&](const CharsetEntry& e) { return e.grapheme == grapheme[0]; });
    if (dup != entries.end()) {
      if (dup->arpabet != arpabet || dup->cls != *cls) {
        throw ConfigError(where + "conflicting duplicate grapheme");
      }
      continue;
    }
    entries.push_back({grapheme[0], std::move(arpabet), std::string(), *cls});
  }
  return CharsetTable(std::move(entries), std::move(version));
}

CharsetTable load_charset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read charset file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_charset_file(buf.str(), "file:" + path);
}

void scan_classes(std::string_view text, const CharsetTable& table, const CharPolicy& policy,
                  std::span<const std::string> tags,
                  const std::function<void(size_t, char32_t, CharClass)>& visit) {
  size_t i = 0;
  while (i < text.size()) {
    if (size_t len = match_tag(text, i, tags)) {
      const size_t end = i + len;
      while (i < end) {
        const size_t at = i;
        visit(at, utf8::next(text, i), CharClass::MaskTagChar);
      }
      continue;
    }
    const size_t at = i;
    const char32_t ch = utf8::next(text, i);
    visit(at, ch, table.classify(ch, policy));
  }
}

}  // namespace arcorpus
