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

#include <stdexcept>
#include <string>

namespace arcorpus {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidUtf8 : public Error {
 public:
  InvalidUtf8(std::string what, size_t offset)
      : Error(std::move(what)), offset_(offset) {}
  // Byte offset of the first ill-formed sequence.
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DuplicateSource : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnknownFormat : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  using Error::Error;
};

// Malformed on-disk artifact (vocab file, shard line).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace arcorpus
