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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace arcorpus::utf8 {

inline constexpr char32_t kMaxScalar = 0x10FFFF;

constexpr bool is_scalar(char32_t ch) {
  return ch <= kMaxScalar && (ch < 0xD800 || ch > 0xDFFF);
}

// Decodes the scalar starting at `pos` and advances `pos` past it. The input
// must be valid UTF-8 (see validate()).
inline char32_t next(std::string_view s, size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  if (b0 < 0xE0) {
    char32_t ch = (char32_t(b0 & 0x1F) << 6) | (static_cast<unsigned char>(s[pos + 1]) & 0x3F);
    pos += 2;
    return ch;
  }
  if (b0 < 0xF0) {
    char32_t ch = (char32_t(b0 & 0x0F) << 12) |
                  (char32_t(static_cast<unsigned char>(s[pos + 1]) & 0x3F) << 6) |
                  (static_cast<unsigned char>(s[pos + 2]) & 0x3F);
    pos += 3;
    return ch;
  }
  char32_t ch = (char32_t(b0 & 0x07) << 18) |
                (char32_t(static_cast<unsigned char>(s[pos + 1]) & 0x3F) << 12) |
                (char32_t(static_cast<unsigned char>(s[pos + 2]) & 0x3F) << 6) |
                (static_cast<unsigned char>(s[pos + 3]) & 0x3F);
  pos += 4;
  return ch;
}

// Length in bytes of the sequence introduced by lead byte `b0`.
constexpr size_t sequence_length(unsigned char b0) {
  return b0 < 0x80 ? 1 : b0 < 0xE0 ? 2 : b0 < 0xF0 ? 3 : 4;
}

inline void append(std::string& out, char32_t ch) {
  if (ch < 0x80) {
    out.push_back(static_cast<char>(ch));
  } else if (ch < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (ch >> 6)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  } else if (ch < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (ch >> 12)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (ch >> 18)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  }
}

inline std::string encode(char32_t ch) {
  std::string out;
  append(out, ch);
  return out;
}

// Offset of the first ill-formed byte, or nullopt when `s` is valid UTF-8
// (no overlongs, no surrogates, nothing above U+10FFFF).
std::optional<size_t> first_invalid(std::string_view s);

inline bool is_valid(std::string_view s) { return !first_invalid(s).has_value(); }

// Throws InvalidUtf8 when `s` is ill-formed.
void validate(std::string_view s);

std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);

size_t scalar_count(std::string_view s);

}  // namespace arcorpus::utf8
