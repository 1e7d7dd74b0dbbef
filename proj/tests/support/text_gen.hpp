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

// Seeded random text for property tests and the acceptance run.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace arcorpus::testing {

class TextGen {
 public:
  explicit TextGen(std::uint64_t seed) : rng_(seed) {}

  size_t uniform(size_t lo, size_t hi) { return std::uniform_int_distribution<size_t>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[uniform(0, v.size() - 1)]; }

  // Letters only, optionally with diacritics and tatweel.
  std::string arabic_word(bool decorated = true) {
    std::string w;
    const size_t n = uniform(1, 7);
    for (size_t i = 0; i < n; ++i) {
      w += pick(letters());
      if (decorated && chance(0.15)) w += pick(marks());
      if (decorated && chance(0.05)) w += "ـ";
    }
    return w;
  }

  std::string arabic_sentence(size_t words) {
    std::string s;
    for (size_t i = 0; i < words; ++i) {
      if (i) s += ' ';
      s += arabic_word(false);
    }
    return s;
  }

  std::string latin_word() {
    static const std::string abc = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    std::string w;
    const size_t n = uniform(1, 8);
    for (size_t i = 0; i < n; ++i) w += abc[uniform(0, abc.size() - 1)];
    return w;
  }

  std::string url() {
    static const std::vector<std::string> schemes = {"http://", "https://", "ftp://", "www.", ""};
    static const std::vector<std::string> tlds = {"com", "org", "ar", "net", "sa", "eg"};
    static const std::vector<std::string> tails = {"", "/", "/a/b", "/p?id=42", "/x.html#top",
                                                   "/search?q=k&l=ar", "/~u/%D8%A7"};
    const std::string scheme = pick(schemes);
    std::string host = lower_word() + "." + pick(tlds);
    if (chance(0.3)) host = lower_word() + "." + host;
    std::string tail = pick(tails);
    // A bare host only counts as a link when a path follows.
    if (scheme.empty() && tail.empty()) tail = "/index";
    return scheme + host + tail;
  }

  std::string email() {
    static const std::vector<std::string> tlds = {"com", "org", "net", "edu.sa"};
    std::string local = lower_word();
    if (chance(0.4)) local += pick(std::vector<std::string>{".", "_", "+", "-"}) + lower_word();
    if (chance(0.3)) local += std::to_string(uniform(0, 99));
    return local + "@" + lower_word() + "." + pick(tlds);
  }

  // 7 to 12 digits with mixed separators; Arabic-Indic digits on request.
  std::string phone(bool arabic_digits) {
    std::string p;
    if (chance(0.4)) p += '+';
    const size_t n = uniform(7, 12);
    static const std::vector<std::string> seps = {"", "", "", " ", "-"};
    for (size_t i = 0; i < n; ++i) {
      if (i > 0 && i % 3 == 0) p += pick(seps);
      const size_t d = uniform(0, 9);
      p += arabic_digits ? indic_digit(d) : std::string(1, char('0' + d));
    }
    if (chance(0.2)) {
      // (NN) NNN-NNNN
      p.clear();
      p += "(" + std::to_string(uniform(10, 99)) + ") " + std::to_string(uniform(100, 999)) + "-" +
           std::to_string(uniform(1000, 9999));
    }
    return p;
  }

  std::string html() {
    static const std::vector<std::string> snippets = {
        "<p>",     "</p>",          "<br/>",       "<b>",       "</b>",        "<a href=\"x\">",
        "</a>",    "&amp;",         "&lt;",        "&gt;",      "&nbsp;",      "&#1576;",
        "&#x627;", "&quot;",        "<!-- c -->",  "<div class='m'>", "</div>",  "&amp;lt;",
        "<script>var a = 1 < 2;</script>",         "<style>p{color:red}</style>", "&copy;"};
    return pick(snippets);
  }

  std::string emoji() {
    static const std::vector<std::string> e = {"😀", "👍", "❤️", "🇸🇦", "☕", "🙏🏽", "👨‍👩‍👧"};
    return pick(e);
  }

  std::string punctuation() {
    static const std::vector<std::string> p = {"?", ",", ";", "!", ".", "؟", "،", "؛", ":",
                                               "\"", "'", "(", ")", "/", "-", "/-", "«", "»",
                                               "…", "[", "]", "{", "}", "*", "_", "٪"};
    return pick(p);
  }

  std::string digits() {
    std::string d;
    const size_t n = uniform(1, 4);
    const int style = static_cast<int>(uniform(0, 2));
    for (size_t i = 0; i < n; ++i) {
      const size_t v = uniform(0, 9);
      if (style == 0) d += char('0' + v);
      if (style == 1) d += indic_digit(v);
      if (style == 2) d += extended_digit(v);
    }
    return d;
  }

  std::string whitespace() {
    static const std::vector<std::string> w = {" ", " ", "  ", "\t", "\n", " ", "\r\n", "　"};
    return pick(w);
  }

  // Scalars that are outside the allowed set, or awkward combinations.
  std::string noise() {
    static const std::vector<std::string> n = {"©", "®", "™", "پ", "چ", "گ", "ک", "ی", "‏",
                                               "​", "й", "é", "ß", "中", "ٔ", "ٕ",
                                               "ٰ", "ی", "ـ", "ـــ",
                                               "﻿", "\U0001D400", "\x01", "\x7F"};
    if (chance(0.2)) {
      // Any scalar at all.
      char32_t ch;
      do {
        ch = static_cast<char32_t>(uniform(1, 0x10FFFF));
      } while (ch >= 0xD800 && ch <= 0xDFFF);
      return encode(ch);
    }
    return pick(n);
  }

  // Mixed input for the cleaning properties.
  std::string mixed() {
    std::string s;
    const size_t pieces = uniform(0, 24);
    for (size_t i = 0; i < pieces; ++i) {
      const size_t k = uniform(0, 99);
      if (k < 30) {
        s += arabic_word();
      } else if (k < 36) {
        s += latin_word();
      } else if (k < 44) {
        s += whitespace();
        continue;
      } else if (k < 50) {
        s += digits();
      } else if (k < 55) {
        s += url();
      } else if (k < 59) {
        s += email();
      } else if (k < 62) {
        s += phone(chance(0.5));
      } else if (k < 70) {
        s += html();
      } else if (k < 74) {
        s += emoji();
      } else if (k < 84) {
        s += punctuation();
      } else if (k < 88) {
        // Decomposed hamza and repeated letters.
        s += pick(std::vector<std::string>{"\u0627\u0654", "\u0648\u0654", "\u064A\u0654", "\u0627\u0655",
                                           "\u0654\u0627", "\u0623\u0654", "هههههه", "ووووو"});
      } else if (k < 92) {
        s += "(" + arabic_word() + ")";
      } else {
        s += noise();
      }
      if (chance(0.7)) s += ' ';
    }
    return s;
  }

  std::mt19937_64& rng() { return rng_; }

  static std::string encode(char32_t ch) {
    std::string out;
    if (ch < 0x80) {
      out += static_cast<char>(ch);
    } else if (ch < 0x800) {
      out += static_cast<char>(0xC0 | (ch >> 6));
      out += static_cast<char>(0x80 | (ch & 0x3F));
    } else if (ch < 0x10000) {
      out += static_cast<char>(0xE0 | (ch >> 12));
      out += static_cast<char>(0x80 | ((ch >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (ch & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (ch >> 18));
      out += static_cast<char>(0x80 | ((ch >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((ch >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (ch & 0x3F));
    }
    return out;
  }

  static std::string indic_digit(size_t d) { return encode(static_cast<char32_t>(0x0660 + d)); }
  static std::string extended_digit(size_t d) { return encode(static_cast<char32_t>(0x06F0 + d)); }

  // U+0621..U+063A and U+0641..U+064A.
  static const std::vector<std::string>& letters() {
    static const std::vector<std::string> v = [] {
      std::vector<std::string> out;
      for (char32_t c = 0x0621; c <= 0x063A; ++c) out.push_back(encode(c));
      for (char32_t c = 0x0641; c <= 0x064A; ++c) out.push_back(encode(c));
      return out;
    }();
    return v;
  }

  // U+064B..U+0652.
  static const std::vector<std::string>& marks() {
    static const std::vector<std::string> v = [] {
      std::vector<std::string> out;
      for (char32_t c = 0x064B; c <= 0x0652; ++c) out.push_back(encode(c));
      return out;
    }();
    return v;
  }

 private:
  std::string lower_word() {
    static const std::string abc = "abcdefghijklmnopqrstuvwxyz";
    std::string w;
    const size_t n = uniform(2, 8);
    for (size_t i = 0; i < n; ++i) w += abc[uniform(0, abc.size() - 1)];
    return w;
  }

  std::mt19937_64 rng_;
};

}  // namespace arcorpus::testing
