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

#include "arcorpus/segmenter.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "arcorpus/errors.hpp"
#include "arcorpus/utf8.hpp"

namespace arcorpus {

WhitespaceSegmenter::WhitespaceSegmenter() : WhitespaceSegmenter(MaskPolicy{}, CharPolicy{}) {}

WhitespaceSegmenter::WhitespaceSegmenter(const MaskPolicy& mask, const CharPolicy& chars)
    : tags_(mask.tags()), punct_(chars.kept_punctuation) {}

std::vector<std::string_view> WhitespaceSegmenter::spans(std::string_view text) const {
  std::vector<std::string_view> out;
  size_t word = std::string_view::npos;
  auto flush = [&](size_t end) {
    if (word != std::string_view::npos && end > word) out.push_back(text.substr(word, end - word));
    word = std::string_view::npos;
  };
  for (size_t i = 0; i < text.size();) {
    if (size_t len = match_tag(text, i, tags_)) {
      flush(i);
      out.push_back(text.substr(i, len));
      i += len;
      continue;
    }
    const size_t start = i;
    const char32_t ch = utf8::next(text, i);
    if (is_space(ch)) {
      flush(start);
    } else if (punct_.find(ch) != std::u32string::npos) {
      flush(start);
      out.push_back(text.substr(start, i - start));
    } else if (word == std::string_view::npos) {
      word = start;
    }
  }
  flush(text.size());
  return out;
}

std::vector<std::string> WhitespaceSegmenter::segment(std::string_view text) const {
  const auto views = spans(text);
  return {views.begin(), views.end()};
}

std::vector<std::string> segment_whitespace(std::string_view text) {
  static const WhitespaceSegmenter segmenter;
  return segmenter.segment(text);
}

std::vector<std::string> ExternalSegmenter::segment(std::string_view text) const {
  namespace fs = std::filesystem;
  std::random_device rd;
  const fs::path tmp = fs::temp_directory_path() /
                       ("arcorpus-seg-" + std::to_string(rd()) + "-" + std::to_string(rd()) + ".txt");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write segmenter input " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
  const std::string cmd = command_ + " < '" + tmp.string() + "'";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    fs::remove(tmp);
    throw IoError("cannot run segmenter: " + command_);
  }
  std::string output;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  const int status = ::pclose(pipe);
  std::error_code ec;
  fs::remove(tmp, ec);
  if (status != 0) throw IoError("segmenter exited with status " + std::to_string(status));
  utf8::validate(output);

  std::vector<std::string> tokens;
  size_t word = std::string::npos;
  for (size_t i = 0; i < output.size();) {
    const size_t start = i;
    if (is_space(utf8::next(output, i))) {
      if (word != std::string::npos) tokens.push_back(output.substr(word, start - word));
      word = std::string::npos;
    } else if (word == std::string::npos) {
      word = start;
    }
  }
  if (word != std::string::npos) tokens.push_back(output.substr(word));
  return tokens;
}

}  // namespace arcorpus
