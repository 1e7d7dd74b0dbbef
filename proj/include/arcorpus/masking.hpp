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
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace arcorpus {

struct MaskPolicy {
  std::string url_tag = "[link]";
  std::string mail_tag = "[mail]";
  std::string phone_tag = "[phone]";
  bool strip_html = true;
  bool strip_parentheticals = true;

  std::array<std::string, 3> tags() const { return {url_tag, mail_tag, phone_tag}; }
  // Throws ConfigError unless tags are non-empty, whitespace-free and distinct.
  void validate() const;
};

// Half-open byte range [begin, end).
struct Span {
  size_t begin;
  size_t end;
  bool operator==(const Span&) const = default;
};

enum class PatternKind { Url, Email, Phone };

// Optional ECMAScript regex overrides for the built-in scanners. Loaded from
// a file of `name TAB pattern` lines, name in {url, email, phone}.
struct PatternSet {
  std::optional<std::regex> url;
  std::optional<std::regex> email;
  std::optional<std::regex> phone;
  std::vector<std::pair<std::string, std::string>> sources;  // name, pattern text

  const std::optional<std::regex>& get(PatternKind kind) const;
  bool empty() const { return sources.empty(); }
};

PatternSet parse_patterns(std::string_view contents);
PatternSet load_patterns(const std::string& path);

// Built-in scanners. Each returns the maximal non-overlapping matches, left
// to right; the grammars are listed in docs/patterns.md.
std::vector<Span> find_urls(std::string_view text);
std::vector<Span> find_emails(std::string_view text);
std::vector<Span> find_phones(std::string_view text);
std::vector<Span> find_matches(std::string_view text, PatternKind kind,
                               const PatternSet& overrides = {});

// Replaces every span with `tag`. Spans must be sorted and disjoint.
std::string replace_spans(std::string_view text, const std::vector<Span>& spans,
                          std::string_view tag);

// Masking repeats until the scanner finds nothing (at most 8 rounds): a tag
// can give a neighbouring match the left boundary it lacked before.
std::string mask_urls(std::string_view text, const MaskPolicy& policy,
                      const PatternSet& overrides = {});
std::string mask_emails(std::string_view text, const MaskPolicy& policy,
                        const PatternSet& overrides = {});
// Expects ASCII digits; run normalize_digits first.
std::string mask_phones(std::string_view text, const MaskPolicy& policy,
                        const PatternSet& overrides = {});

// Removes tags, comments and script/style bodies and decodes character
// references. Repeats until the text stops changing, so escaped markup
// (&lt;p&gt;) is removed as well.
std::string strip_html(std::string_view text);

// Removes balanced (...) spans with their contents, outermost pair winning
// for nested input; unbalanced parentheses are dropped on their own.
std::string strip_parentheticals(std::string_view text);

}  // namespace arcorpus
