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

#include "arcorpus/masking.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "arcorpus/charset.hpp"
#include "arcorpus/errors.hpp"
#include "arcorpus/utf8.hpp"

namespace arcorpus {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }

// [A-Za-z0-9-]
bool is_label_char(char c) { return is_alnum(c) || c == '-'; }

// [A-Za-z0-9._~:/?#!$&'*+,;=%-]
bool is_url_char(char c) {
  if (is_alnum(c)) return true;
  switch (c) {
    case '.': case '_': case '~': case ':': case '/': case '?': case '#': case '!':
    case '$': case '&': case '\'': case '*': case '+': case ',': case ';': case '=':
    case '%': case '-':
      return true;
    default:
      return false;
  }
}

// [A-Za-z0-9._%+-]
bool is_local_char(char c) {
  return is_alnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}

size_t url_run_end(std::string_view s, size_t i) {
  while (i < s.size() && is_url_char(s[i])) ++i;
  return i;
}

// Length of the URL starting at i, 0 if none.
size_t match_url_at(std::string_view s, size_t i) {
  // Every form starts with a label character.
  if (!is_label_char(s[i])) return 0;
  if (i > 0) {
    const char p = s[i - 1];
    if (is_local_char(p) || p == '@') return 0;
  }
  for (std::string_view scheme : {"http://", "https://", "ftp://"}) {
    if (s.compare(i, scheme.size(), scheme) == 0) {
      const size_t end = url_run_end(s, i + scheme.size());
      if (end > i + scheme.size()) return end - i;
    }
  }
  if (s.compare(i, 4, "www.") == 0) {
    const size_t end = url_run_end(s, i + 4);
    if (end > i + 4) return end - i;
  }
  // Bare host with a path: (label.)+ label '/' path, last label starting
  // with a letter.
  size_t j = i;
  size_t labels = 0;
  size_t last_label = i;
  for (;;) {
    const size_t label_start = j;
    while (j < s.size() && is_label_char(s[j])) ++j;
    if (j == label_start) return 0;
    ++labels;
    last_label = label_start;
    if (j < s.size() && s[j] == '.') {
      ++j;
      continue;
    }
    break;
  }
  if (labels < 2 || !is_alpha(s[last_label])) return 0;
  if (j >= s.size() || s[j] != '/') return 0;
  return url_run_end(s, j) - i;
}

size_t match_email_at(std::string_view s, size_t i) {
  if (i > 0 && (is_local_char(s[i - 1]) || s[i - 1] == '@')) return 0;
  size_t j = i;
  while (j < s.size() && is_local_char(s[j])) ++j;
  if (j == i || j >= s.size() || s[j] != '@') return 0;
  ++j;
  const size_t host = j;
  while (j < s.size() && is_label_char(s[j])) ++j;
  if (j == host) return 0;
  size_t dots = 0;
  while (j + 1 < s.size() && s[j] == '.' && is_label_char(s[j + 1])) {
    j += 2;
    while (j < s.size() && is_label_char(s[j])) ++j;
    ++dots;
  }
  return dots == 0 ? 0 : j - i;
}

constexpr size_t kMinPhoneDigits = 7;

// Position of the digit that continues a phone number after position p, or
// npos. Separators: " ", "-", ")", ") ", ")-", " (", "(", "-(".
size_t phone_continue(std::string_view s, size_t p) {
  auto digit_at = [&](size_t k) { return k < s.size() && is_digit(s[k]); };
  if (digit_at(p)) return p;
  if (p >= s.size()) return std::string_view::npos;
  const char c = s[p];
  if ((c == ' ' || c == '-') && digit_at(p + 1)) return p + 1;
  if (c == ')') {
    if (p + 1 < s.size() && (s[p + 1] == ' ' || s[p + 1] == '-') && digit_at(p + 2)) return p + 2;
    if (digit_at(p + 1)) return p + 1;
  }
  if (c == ' ' && p + 1 < s.size() && s[p + 1] == '(' && digit_at(p + 2)) return p + 2;
  if (c == '(' && digit_at(p + 1)) return p + 1;
  if (c == '-' && p + 1 < s.size() && s[p + 1] == '(' && digit_at(p + 2)) return p + 2;
  return std::string_view::npos;
}

size_t match_phone_at(std::string_view s, size_t i) {
  if (i > 0 && is_digit(s[i - 1])) return 0;
  size_t j = i;
  if (j < s.size() && s[j] == '+') ++j;
  if (j < s.size() && s[j] == '(') ++j;
  if (j >= s.size() || !is_digit(s[j])) return 0;
  size_t digits = 1;
  size_t last = j;
  for (;;) {
    const size_t next = phone_continue(s, last + 1);
    if (next == std::string_view::npos) break;
    last = next;
    ++digits;
  }
  return digits >= kMinPhoneDigits ? last + 1 - i : 0;
}

template <typename MatchAt>
std::vector<Span> scan(std::string_view s, MatchAt match_at) {
  std::vector<Span> out;
  size_t i = 0;
  while (i < s.size()) {
    // Every pattern starts with an ASCII byte.
    if (static_cast<unsigned char>(s[i]) < 0x80) {
      if (size_t len = match_at(s, i)) {
        out.push_back({i, i + len});
        i += len;
        continue;
      }
    }
    ++i;
  }
  return out;
}

std::vector<Span> regex_spans(std::string_view text, const std::regex& re) {
  std::vector<Span> out;
  const std::string owned(text);
  for (auto it = std::sregex_iterator(owned.begin(), owned.end(), re); it != std::sregex_iterator();
       ++it) {
    const auto& m = *it;
    if (m.length(0) == 0) continue;
    out.push_back({static_cast<size_t>(m.position(0)),
                   static_cast<size_t>(m.position(0) + m.length(0))});
  }
  return out;
}

}  // namespace

void MaskPolicy::validate() const {
  const auto t = tags();
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i].empty()) throw ConfigError("mask tag must not be empty");
    if (!utf8::is_valid(t[i])) throw ConfigError("mask tag must be valid UTF-8");
    for (char32_t ch : utf8::decode(t[i])) {
      if (is_space(ch)) throw ConfigError("mask tag '" + t[i] + "' contains whitespace");
    }
    for (size_t j = 0; j < i; ++j) {
      if (t[i] == t[j]) throw ConfigError("mask tags must be distinct");
    }
  }
}

const std::optional<std::regex>& PatternSet::get(PatternKind kind) const {
  switch (kind) {
    case PatternKind::Url: return url;
    case PatternKind::Email: return email;
    case PatternKind::Phone: return phone;
  }
  return url;
}

PatternSet parse_patterns(std::string_view contents) {
  PatternSet set;
  std::istringstream in{std::string(contents)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError("patterns line " + std::to_string(line_no) + ": expected name TAB pattern");
    }
    const std::string name = line.substr(0, tab);
    const std::string pattern = line.substr(tab + 1);
    std::regex re;
    try {
      re = std::regex(pattern, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw ConfigError("patterns line " + std::to_string(line_no) + ": " + e.what());
    }
    if (name == "url") {
      set.url = std::move(re);
    } else if (name == "email") {
      set.email = std::move(re);
    } else if (name == "phone") {
      set.phone = std::move(re);
    } else {
      throw ConfigError("patterns line " + std::to_string(line_no) + ": unknown name '" + name + "'");
    }
    set.sources.emplace_back(name, pattern);
  }
  return set;
}

PatternSet load_patterns(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read patterns file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_patterns(buf.str());
}

std::vector<Span> find_urls(std::string_view text) { return scan(text, match_url_at); }
std::vector<Span> find_emails(std::string_view text) { return scan(text, match_email_at); }
std::vector<Span> find_phones(std::string_view text) { return scan(text, match_phone_at); }

std::vector<Span> find_matches(std::string_view text, PatternKind kind, const PatternSet& overrides) {
  if (const auto& re = overrides.get(kind)) return regex_spans(text, *re);
  switch (kind) {
    case PatternKind::Url: return find_urls(text);
    case PatternKind::Email: return find_emails(text);
    case PatternKind::Phone: return find_phones(text);
  }
  return {};
}

std::string replace_spans(std::string_view text, const std::vector<Span>& spans,
                          std::string_view tag) {
  if (spans.empty()) return std::string(text);
  std::string out;
  out.reserve(text.size());
  size_t at = 0;
  for (const auto& sp : spans) {
    out.append(text.substr(at, sp.begin - at));
    out.append(tag);
    at = sp.end;
  }
  out.append(text.substr(at));
  return out;
}

namespace {

// A tag can open a left boundary that the masked text did not have
// ("a@b.com_c@d.org"), so masking repeats until nothing matches. Tags that
// themselves match would never settle; the round cap bounds that case.
constexpr int kMaxMaskRounds = 8;

std::string mask_until_stable(std::string_view text, PatternKind kind, const std::string& tag,
                              const PatternSet& overrides) {
  std::string cur(text);
  for (int round = 0; round < kMaxMaskRounds; ++round) {
    auto spans = find_matches(cur, kind, overrides);
    if (spans.empty()) break;
    cur = replace_spans(cur, spans, tag);
  }
  return cur;
}

}  // namespace

std::string mask_urls(std::string_view text, const MaskPolicy& policy, const PatternSet& overrides) {
  return mask_until_stable(text, PatternKind::Url, policy.url_tag, overrides);
}

std::string mask_emails(std::string_view text, const MaskPolicy& policy,
                        const PatternSet& overrides) {
  if (!overrides.email && text.find('@') == std::string_view::npos) return std::string(text);
  return mask_until_stable(text, PatternKind::Email, policy.mail_tag, overrides);
}

std::string mask_phones(std::string_view text, const MaskPolicy& policy,
                        const PatternSet& overrides) {
  return mask_until_stable(text, PatternKind::Phone, policy.phone_tag, overrides);
}

// ---------------------------------------------------------------------------
// HTML

namespace {

bool iequals_at(std::string_view s, size_t pos, std::string_view word) {
  if (pos + word.size() > s.size()) return false;
  for (size_t k = 0; k < word.size(); ++k) {
    char c = s[pos + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != word[k]) return false;
  }
  return true;
}

size_t ifind(std::string_view s, size_t from, std::string_view word) {
  for (size_t i = from; i + word.size() <= s.size(); ++i) {
    if (iequals_at(s, i, word)) return i;
  }
  return std::string_view::npos;
}

constexpr std::pair<std::string_view, char32_t> kNamedEntities[] = {
    {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},       {"quot", U'"'},
    {"apos", U'\''},    {"nbsp", 0xA0},     {"copy", 0xA9},     {"reg", 0xAE},
    {"laquo", 0xAB},    {"raquo", 0xBB},    {"hellip", 0x2026}, {"ndash", 0x2013},
    {"mdash", 0x2014},  {"lsquo", 0x2018},  {"rsquo", 0x2019},  {"ldquo", 0x201C},
    {"rdquo", 0x201D},  {"zwnj", 0x200C},   {"zwj", 0x200D},    {"shy", 0xAD},
};

// Decodes the character reference at s[i] == '&'. Returns its length and the
// scalar, or 0 when the text is not a well-formed reference.
size_t decode_entity(std::string_view s, size_t i, char32_t& out) {
  const size_t semi = s.find(';', i + 1);
  if (semi == std::string_view::npos || semi - i > 12) return 0;
  const std::string_view body = s.substr(i + 1, semi - i - 1);
  if (body.empty()) return 0;
  if (body[0] == '#') {
    const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    const std::string_view digits = body.substr(hex ? 2 : 1);
    if (digits.empty() || digits.size() > 7) return 0;
    char32_t v = 0;
    for (char c : digits) {
      int d;
      if (is_digit(c)) {
        d = c - '0';
      } else if (hex && c >= 'a' && c <= 'f') {
        d = c - 'a' + 10;
      } else if (hex && c >= 'A' && c <= 'F') {
        d = c - 'A' + 10;
      } else {
        return 0;
      }
      v = v * (hex ? 16 : 10) + static_cast<char32_t>(d);
    }
    if (v == 0 || !utf8::is_scalar(v)) return 0;
    out = v;
    return semi - i + 1;
  }
  for (const auto& [name, ch] : kNamedEntities) {
    if (body == name) {
      out = ch;
      return semi - i + 1;
    }
  }
  return 0;
}

constexpr std::string_view kInlineTags[] = {"a",    "abbr", "b",     "bdi",  "bdo", "big",
                                            "code", "em",   "font",  "i",    "kbd", "mark",
                                            "q",    "s",    "small", "span", "strong",
                                            "sub",  "sup",  "tt",    "u",    "wbr"};

bool is_inline_tag(std::string_view tag) {
  size_t k = 1;
  if (k < tag.size() && tag[k] == '/') ++k;
  size_t e = k;
  while (e < tag.size() && is_alnum(tag[e])) ++e;
  std::string name(tag.substr(k, e - k));
  for (auto& c : name) c = static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  return std::find(std::begin(kInlineTags), std::end(kInlineTags), name) != std::end(kInlineTags);
}

std::string strip_html_once(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  auto separate = [&] { pending_space = true; };
  auto emit = [&](std::string_view piece) {
    if (pending_space && !out.empty() && out.back() != ' ' && out.back() != '\n' &&
        piece.front() != ' ' && piece.front() != '\n') {
      out.push_back(' ');
    }
    pending_space = false;
    out.append(piece);
  };

  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '<' && i + 1 < s.size()) {
      const char n = s[i + 1];
      if (s.compare(i, 4, "<!--") == 0) {
        const size_t end = s.find("-->", i + 4);
        i = end == std::string_view::npos ? s.size() : end + 3;
        separate();
        continue;
      }
      const bool raw_text = iequals_at(s, i + 1, "script") || iequals_at(s, i + 1, "style");
      if (raw_text) {
        const std::string_view name = iequals_at(s, i + 1, "script") ? "script" : "style";
        const size_t after = i + 1 + name.size();
        if (after >= s.size() || s[after] == '>' || s[after] == '/' || s[after] == ' ' ||
            s[after] == '\t' || s[after] == '\n' || s[after] == '\r') {
          const std::string close = "</" + std::string(name);
          const size_t end = ifind(s, after, close);
          if (end == std::string_view::npos) {
            i = s.size();
          } else {
            const size_t gt = s.find('>', end);
            i = gt == std::string_view::npos ? s.size() : gt + 1;
          }
          separate();
          continue;
        }
      }
      const bool opens_tag = is_alpha(n) || n == '!' || n == '?' ||
                             (n == '/' && i + 2 < s.size() && is_alpha(s[i + 2]));
      if (opens_tag) {
        const size_t gt = s.find('>', i + 1);
        if (gt != std::string_view::npos) {
          if (!is_inline_tag(s.substr(i, gt - i))) separate();
          i = gt + 1;
          continue;
        }
      }
    } else if (c == '&') {
      char32_t ch;
      if (size_t len = decode_entity(s, i, ch)) {
        emit(utf8::encode(ch));
        i += len;
        continue;
      }
    }
    // Plain run up to the next '<' or '&'.
    size_t j = i + 1;
    while (j < s.size() && s[j] != '<' && s[j] != '&') ++j;
    emit(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// find_first_of with a short set calls memchr once per position.
bool has_either(std::string_view s, char a, char b) {
  for (char c : s) {
    if (c == a || c == b) return true;
  }
  return false;
}

}  // namespace

std::string strip_html(std::string_view text) {
  if (!has_either(text, '<', '&')) return std::string(text);
  std::string cur = strip_html_once(text);
  for (;;) {
    if (!has_either(cur, '<', '&')) return cur;
    std::string next = strip_html_once(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

std::string strip_parentheticals(std::string_view text) {
  if (!has_either(text, '(', ')')) return std::string(text);
  std::string out;
  out.reserve(text.size());
  std::vector<size_t> open;
  for (char c : text) {
    if (c == '(') {
      open.push_back(out.size());
      out.push_back('(');
    } else if (c == ')') {
      if (!open.empty()) {
        out.resize(open.back());
        open.pop_back();
      }
    } else {
      out.push_back(c);
    }
  }
  for (auto it = open.rbegin(); it != open.rend(); ++it) out.erase(*it, 1);
  return out;
}

}  // namespace arcorpus
