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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "arcorpus/charset.hpp"
#include "arcorpus/config.hpp"

namespace arcorpus {

// Character-level normalizations. All are pure, total on valid UTF-8 and
// idempotent.

std::string strip_tatweel(std::string_view text);

// Truncates runs of one repeated Arabic letter to `max_run` (>= 1). Digits,
// punctuation and everything else are left alone.
std::string collapse_elongation(std::string_view text, int max_run = 2);

// Composes carrier + U+0654/U+0655 into the precomposed letter and drops
// combining hamza marks that have no valid carrier.
std::string normalize_hamza(std::string_view text);

// U+0660..U+0669 and U+06F0..U+06F9 to ASCII digits.
std::string normalize_digits(std::string_view text);

// Maps '?' ',' ';' to their Arabic forms, then deletes every punctuation
// scalar outside cfg.chars.kept_punctuation. Mask tag literals are left
// intact.
std::string normalize_punctuation(std::string_view text, const CleanConfig& cfg);

// Deletes each "/-" pair; a pair exposed by a deletion is deleted too.
std::string remove_slash_hyphen(std::string_view text);

// Deletes scalars classified Noisy; mask tag literals survive.
std::string remove_noisy(std::string_view text, const CharsetTable& charset, const CleanConfig& cfg);

// Whitespace runs become one space; leading and trailing whitespace is
// trimmed.
std::string collapse_whitespace(std::string_view text);

struct Transform {
  std::string name;
  std::function<std::string(std::string_view)> apply;
};

// Transforms in cfg.transform_order, bound to `cfg` and `charset`. Both must
// outlive the returned chain.
std::vector<Transform> build_chain(const CleanConfig& cfg, const CharsetTable& charset);

std::string apply_chain(const std::vector<Transform>& chain, std::string_view text);

}  // namespace arcorpus
