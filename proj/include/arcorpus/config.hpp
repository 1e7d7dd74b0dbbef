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

#include <string>
#include <string_view>
#include <vector>

#include "arcorpus/charset.hpp"
#include "arcorpus/masking.hpp"

namespace arcorpus {

// Names accepted in CleanConfig::transform_order.
namespace transform_names {
inline constexpr std::string_view kStripHtml = "strip_html";
inline constexpr std::string_view kMaskUrls = "mask_urls";
inline constexpr std::string_view kMaskEmails = "mask_emails";
inline constexpr std::string_view kNormalizeDigits = "normalize_digits";
inline constexpr std::string_view kMaskPhones = "mask_phones";
inline constexpr std::string_view kStripTatweel = "strip_tatweel";
inline constexpr std::string_view kNormalizeHamza = "normalize_hamza";
inline constexpr std::string_view kStripParentheticals = "strip_parentheticals";
inline constexpr std::string_view kRemoveSlashHyphen = "remove_slash_hyphen";
inline constexpr std::string_view kNormalizePunctuation = "normalize_punctuation";
inline constexpr std::string_view kCollapseElongation = "collapse_elongation";
inline constexpr std::string_view kRemoveNoisy = "remove_noisy";
inline constexpr std::string_view kCollapseWhitespace = "collapse_whitespace";
}  // namespace transform_names

const std::vector<std::string>& known_transforms();
const std::vector<std::string>& default_transform_order();

struct CleanConfig {
  MaskPolicy mask;
  CharPolicy chars;
  int max_run = 2;
  std::vector<std::string> transform_order = default_transform_order();
  PatternSet patterns;  // optional overrides for the built-in scanners

  // Throws ConfigError. The order must hold known names without repeats, and
  // strip_html / strip_parentheticals appear iff their mask policy flag is set.
  void validate() const;
};

// JSON mirror of CleanConfig. Missing keys keep their defaults; unknown keys
// are rejected.
CleanConfig parse_config(std::string_view json_text);
CleanConfig load_config(const std::string& path);
std::string config_to_json(const CleanConfig& cfg, int indent = 2);

}  // namespace arcorpus
