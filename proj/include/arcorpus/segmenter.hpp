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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "arcorpus/charset.hpp"
#include "arcorpus/masking.hpp"

namespace arcorpus {

// Splits cleaned text into word tokens. Implementations must be stable:
// joining the tokens with single spaces and segmenting again gives the same
// list.
class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual std::vector<std::string> segment(std::string_view text) const = 0;
};

// Splits on whitespace; each kept punctuation scalar becomes its own token
// and mask tags stay whole.
class WhitespaceSegmenter : public Segmenter {
 public:
  WhitespaceSegmenter();
  WhitespaceSegmenter(const MaskPolicy& mask, const CharPolicy& chars);

  std::vector<std::string> segment(std::string_view text) const override;

  // Same split as segment(), as views into `text`.
  std::vector<std::string_view> spans(std::string_view text) const;

 private:
  std::array<std::string, 3> tags_;
  std::u32string punct_;
};

// Runs an external word segmenter once per call: text on stdin,
// space-separated segments on stdout.
class ExternalSegmenter : public Segmenter {
 public:
  explicit ExternalSegmenter(std::string command) : command_(std::move(command)) {}
  std::vector<std::string> segment(std::string_view text) const override;

 private:
  std::string command_;
};

std::vector<std::string> segment_whitespace(std::string_view text);

}  // namespace arcorpus
