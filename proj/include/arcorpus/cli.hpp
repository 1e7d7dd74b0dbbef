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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arcorpus/errors.hpp"

namespace arcorpus::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsage = 2,
  kIo = 3,
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// Options shared by commands that clean, segment or classify text.
struct TextOptions {
  std::optional<std::string> config;
  std::optional<std::string> charset;
  std::optional<std::string> patterns;
  std::optional<std::string> segmenter_cmd;
};

struct CleanCmd {
  std::string manifest;
  std::string out;
  std::uint64_t shard_size = 64ull << 20;
  unsigned workers = 0;
  TextOptions text;
};

struct StatsCmd {
  std::string in;
  std::optional<std::string> out;
  std::string format = "tsv";
  TextOptions text;
};

struct BpeTrainCmd {
  std::string in;
  std::size_t merges = 0;
  std::string out;
  std::string unit = "bytes";
  TextOptions text;
};

struct EncodeCmd {
  std::string vocab;
  std::string in;
  std::string out;
};

struct DecodeCmd {
  std::string vocab;
  std::string in;
  std::string out;
};

struct ValidateCharsetCmd {
  std::string in;
  TextOptions text;
};

struct VersionCmd {};

struct HelpCmd {
  std::string text;
};

using Command = std::variant<CleanCmd, StatsCmd, BpeTrainCmd, EncodeCmd, DecodeCmd,
                             ValidateCharsetCmd, VersionCmd, HelpCmd>;

// argv without the program name. Throws UsageError.
Command parse_args(const std::vector<std::string>& args);

// "<tool version> (charset <table version>)".
std::string version_string();

int run(const Command& cmd, std::ostream& out, std::ostream& err);

// parse_args + run with exit-code mapping; what main() calls.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ValidationReport {
  std::uint64_t scalars = 0;
  std::uint64_t noisy = 0;
  std::vector<std::string> positions;  // first 100, "file:line:byte U+XXXX"
};

ValidationReport validate_charset_path(const std::string& path, const TextOptions& text);

}  // namespace arcorpus::cli
