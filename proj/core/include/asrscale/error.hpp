// Copyright 2026 The asrscale Authors. All Rights Reserved.
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
#include <cstdint>
#include <stdexcept>
#include <string>

namespace asrscale {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller (e.g. adapter rank 0).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configuration references something that does not exist or is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but has no answer in the model's domain:
/// an unattainable target, a non-invertible fit, an undefined metric.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Textual input could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A store already holds a record with the same run id.
class ConflictError : public Error {
 public:
  using Error::Error;
};

/// The run store log contains a line that is not a valid record.
class CorruptStoreError : public Error {
 public:
  CorruptStoreError(const std::string& what, std::uint64_t offset)
      : Error("corrupt store record at byte offset " + std::to_string(offset) +
              ": " + what),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace asrscale
