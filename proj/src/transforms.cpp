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

#include "arcorpus/transforms.hpp"

#include <array>
#include <cstring>
#include <memory>

#include "arcorpus/errors.hpp"
#include "arcorpus/masking.hpp"
#include "arcorpus/utf8.hpp"

namespace arcorpus {

namespace {

constexpr char32_t kHamzaAbove = 0x0654;
constexpr char32_t kHamzaBelow = 0x0655;

bool contains(std::string_view text, std::string_view needle) {
  return text.find(needle) != std::string_view::npos;
}

// Position of the two-byte sequence b0 b1 at or after `from`. A plain loop:
// memchr-based find() stops on every Arabic letter when b0 is D8 or D9.
size_t find_pair(std::string_view text, char b0, char b1, size_t from = 0) {
  for (size_t i = from; i + 1 < text.size(); ++i) {
    if (text[i] == b0 && text[i + 1] == b1) return i;
  }
  return std::string_view::npos;
}

// Last scalar of a valid UTF-8 string and its byte length.
char32_t last_scalar(std::string_view s, size_t& len) {
  size_t start = s.size();
  do {
    --start;
  } while (start > 0 && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80);
  len = s.size() - start;
  size_t pos = start;
  return utf8::next(s, pos);
}

char32_t compose_hamza(char32_t carrier, char32_t mark) {
  if (mark == kHamzaAbove) {
    switch (carrier) {
      case 0x0627: return 0x0623;
      case 0x0648: return 0x0624;
      case 0x064A: return 0x0626;
      default: return 0;
    }
  }
  return carrier == 0x0627 ? 0x0625 : 0;
}

}  // namespace

std::string strip_tatweel(std::string_view text) {
  // U+0640 = D9 80.
  if (find_pair(text, '\xD9', '\x80') == std::string_view::npos) return std::string(text);
  std::string out;
  out.reserve(text.size());
  size_t at = 0;
  for (size_t hit; (hit = find_pair(text, '\xD9', '\x80', at)) != std::string_view::npos; at = hit + 2) {
    out.append(text.substr(at, hit - at));
  }
  out.append(text.substr(at));
  return out;
}

namespace {

// Arabic letters are two bytes with lead D8 or D9, so a run shows up as the
// same byte pair repeated.
bool has_letter_run(std::string_view text, int max_run) {
  for (size_t i = 0; i + 1 < text.size();) {
    const auto b = static_cast<unsigned char>(text[i]);
    if (b != 0xD8 && b != 0xD9) {
      ++i;
      continue;
    }
    int count = 1;
    size_t j = i + 2;
    while (j + 1 < text.size() && text[j] == text[i] && text[j + 1] == text[i + 1]) {
      ++count;
      j += 2;
    }
    if (count > max_run) {
      size_t pos = i;
      if (is_arabic_letter(utf8::next(text, pos))) return true;
    }
    i = j;
  }
  return false;
}

// False when the text has no whitespace other than single inner ASCII
// spaces. Lead bytes C2, E1, E2, E3 cover every non-ASCII space.
bool needs_whitespace_collapse(std::string_view text) {
  if (text.empty()) return false;
  if (text.front() == ' ' || text.back() == ' ') return true;
  for (size_t i = 0; i < text.size(); ++i) {
    switch (static_cast<unsigned char>(text[i])) {
      case '\t': case '\n': case '\v': case '\f': case '\r':
      case 0xC2: case 0xE1: case 0xE2: case 0xE3:
        return true;
      case ' ':
        if (text[i + 1] == ' ') return true;
        break;
      default:
        break;
    }
  }
  return false;
}

}  // namespace

std::string collapse_elongation(std::string_view text, int max_run) {
  if (max_run < 1) throw ConfigError("max_run must be >= 1");
  if (!has_letter_run(text, max_run)) return std::string(text);
  std::string out;
  out.reserve(text.size());
  char32_t prev = 0;
  int run = 0;
  for (size_t i = 0; i < text.size();) {
    const size_t start = i;
    const char32_t ch = utf8::next(text, i);
    if (is_arabic_letter(ch)) {
      run = ch == prev ? run + 1 : 1;
      prev = ch;
      if (run > max_run) continue;
    } else {
      prev = 0;
      run = 0;
    }
    out.append(text.substr(start, i - start));
  }
  return out;
}

std::string normalize_hamza(std::string_view text) {
  if (find_pair(text, '\xD9', '\x94') == std::string_view::npos &&
      find_pair(text, '\xD9', '\x95') == std::string_view::npos) {
    return std::string(text);
  }
  std::string out;
  out.reserve(text.size());
  bool prev_is_source_carrier = false;
  for (size_t i = 0; i < text.size();) {
    const size_t start = i;
    const char32_t ch = utf8::next(text, i);
    if (ch == kHamzaAbove || ch == kHamzaBelow) {
      if (prev_is_source_carrier) {
        size_t len;
        const char32_t carrier = last_scalar(out, len);
        if (char32_t composed = compose_hamza(carrier, ch)) {
          out.resize(out.size() - len);
          utf8::append(out, composed);
        }
      }
      prev_is_source_carrier = false;
      continue;
    }
    prev_is_source_carrier = ch == 0x0627 || ch == 0x0648 || ch == 0x064A;
    out.append(text.substr(start, i - start));
  }
  return out;
}

std::string normalize_digits(std::string_view text) {
  // Lead bytes: U+0660..U+0669 = D9 A0..A9, U+06F0..U+06F9 = DB B0..B9.
  bool any = false;
  for (size_t i = 0; i + 1 < text.size(); ++i) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    const auto b1 = static_cast<unsigned char>(text[i + 1]);
    if ((b0 == 0xD9 && b1 >= 0xA0 && b1 <= 0xA9) || (b0 == 0xDB && b1 >= 0xB0 && b1 <= 0xB9)) {
      any = true;
      break;
    }
  }
  if (!any) return std::string(text);
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size();) {
    const size_t start = i;
    const char32_t ch = utf8::next(text, i);
    if (ch >= 0x0660 && ch <= 0x0669) {
      out.push_back(static_cast<char>('0' + (ch - 0x0660)));
    } else if (ch >= 0x06F0 && ch <= 0x06F9) {
      out.push_back(static_cast<char>('0' + (ch - 0x06F0)));
    } else {
      out.append(text.substr(start, i - start));
    }
  }
  return out;
}

namespace {

// Per-scalar decisions for U+0000..U+07FF (ASCII and Arabic), built once per
// chain. Scalars above fall back to the direct checks.
constexpr char32_t kTableLimit = 0x800;
constexpr char32_t kDrop = 0xFFFFFFFF;

// Output scalar for `ch` under the punctuation rule, or kDrop.
char32_t punctuation_decision(char32_t ch, const std::u32string& kept) {
  switch (ch) {
    case U'?': ch = U'؟'; break;
    case U',': ch = U'،'; break;
    case U';': ch = U'؛'; break;
    default: break;
  }
  if (!is_punctuation(ch) || kept.find(ch) != std::u32string::npos) return ch;
  return kDrop;
}

struct PunctuationTable {
  explicit PunctuationTable(const std::u32string& kept) {
    for (char32_t ch = 0; ch < kTableLimit; ++ch) out[ch] = punctuation_decision(ch, kept);
  }
  std::array<char32_t, kTableLimit> out;
};

struct NoisyTable {
  NoisyTable(const CharsetTable& charset, const CharPolicy& policy) {
    for (char32_t ch = 0; ch < kTableLimit; ++ch) allowed[ch] = charset.classify(ch, policy) != CharClass::Noisy;
  }
  std::array<bool, kTableLimit> allowed;
};

std::string normalize_punctuation_with(std::string_view text, const CleanConfig& cfg,
                                       const PunctuationTable& table) {
  const auto tags = cfg.mask.tags();
  std::string out;
  out.reserve(text.size());
  size_t run = 0;  // start of bytes copied through unchanged
  for (size_t i = 0; i < text.size();) {
    if (size_t len = match_tag(text, i, tags)) {
      i += len;
      continue;
    }
    const size_t start = i;
    const char32_t ch = utf8::next(text, i);
    const char32_t to = ch < kTableLimit ? table.out[ch] : punctuation_decision(ch, cfg.chars.kept_punctuation);
    if (to == ch) continue;
    out.append(text.substr(run, start - run));
    run = i;
    if (to != kDrop) utf8::append(out, to);
  }
  out.append(text.substr(run));
  return out;
}

std::string remove_noisy_with(std::string_view text, const CharsetTable& charset, const CleanConfig& cfg,
                              const NoisyTable& table) {
  const auto tags = cfg.mask.tags();
  std::string out;
  out.reserve(text.size());
  size_t run = 0;
  for (size_t i = 0; i < text.size();) {
    if (size_t len = match_tag(text, i, tags)) {
      i += len;
      continue;
    }
    const size_t start = i;
    const char32_t ch = utf8::next(text, i);
    const bool allowed =
        ch < kTableLimit ? table.allowed[ch] : charset.classify(ch, cfg.chars) != CharClass::Noisy;
    if (!allowed) {
      out.append(text.substr(run, start - run));
      run = i;
    }
  }
  out.append(text.substr(run));
  return out;
}

}  // namespace

std::string normalize_punctuation(std::string_view text, const CleanConfig& cfg) {
  return normalize_punctuation_with(text, cfg, PunctuationTable(cfg.chars.kept_punctuation));
}

std::string remove_slash_hyphen(std::string_view text) {
  if (!contains(text, "/-")) return std::string(text);
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '-' && !out.empty() && out.back() == '/') {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string remove_noisy(std::string_view text, const CharsetTable& charset, const CleanConfig& cfg) {
  return remove_noisy_with(text, charset, cfg, NoisyTable(charset, cfg.chars));
}

std::string collapse_whitespace(std::string_view text) {
  if (!needs_whitespace_collapse(text)) return std::string(text);
  std::string out;
  out.reserve(text.size());
  bool pending = false;
  for (size_t i = 0; i < text.size();) {
    const size_t start = i;
    const char32_t ch = utf8::next(text, i);
    if (is_space(ch)) {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) out.push_back(' ');
    pending = false;
    out.append(text.substr(start, i - start));
  }
  return out;
}

std::vector<Transform> build_chain(const CleanConfig& cfg, const CharsetTable& charset) {
  namespace n = transform_names;
  std::vector<Transform> chain;
  for (const auto& name : cfg.transform_order) {
    std::function<std::string(std::string_view)> fn;
    if (name == n::kStripHtml) {
      fn = [](std::string_view t) { return strip_html(t); };
    } else if (name == n::kMaskUrls) {
      fn = [&cfg](std::string_view t) { return mask_urls(t, cfg.mask, cfg.patterns); };
    } else if (name == n::kMaskEmails) {
      fn = [&cfg](std::string_view t) { return mask_emails(t, cfg.mask, cfg.patterns); };
    } else if (name == n::kNormalizeDigits) {
      fn = [](std::string_view t) { return normalize_digits(t); };
    } else if (name == n::kMaskPhones) {
      fn = [&cfg](std::string_view t) { return mask_phones(t, cfg.mask, cfg.patterns); };
    } else if (name == n::kStripTatweel) {
      fn = [](std::string_view t) { return strip_tatweel(t); };
    } else if (name == n::kNormalizeHamza) {
      fn = [](std::string_view t) { return normalize_hamza(t); };
    } else if (name == n::kStripParentheticals) {
      fn = [](std::string_view t) { return strip_parentheticals(t); };
    } else if (name == n::kRemoveSlashHyphen) {
      fn = [](std::string_view t) { return remove_slash_hyphen(t); };
    } else if (name == n::kNormalizePunctuation) {
      auto table = std::make_shared<const PunctuationTable>(cfg.chars.kept_punctuation);
      fn = [&cfg, table](std::string_view t) { return normalize_punctuation_with(t, cfg, *table); };
    } else if (name == n::kCollapseElongation) {
      fn = [&cfg](std::string_view t) { return collapse_elongation(t, cfg.max_run); };
    } else if (name == n::kRemoveNoisy) {
      auto table = std::make_shared<const NoisyTable>(charset, cfg.chars);
      fn = [&cfg, &charset, table](std::string_view t) { return remove_noisy_with(t, charset, cfg, *table); };
    } else if (name == n::kCollapseWhitespace) {
      fn = [](std::string_view t) { return collapse_whitespace(t); };
    } else {
      throw ConfigError("unknown transform '" + name + "'");
    }
    chain.push_back({name, std::move(fn)});
  }
  return chain;
}

std::string apply_chain(const std::vector<Transform>& chain, std::string_view text) {
  std::string cur(text);
  for (const auto& t : chain) cur = t.apply(cur);
  return cur;
}

}  // namespace arcorpus
