// Copyright 2026 The spatialav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPATIALAV_ERRORS_H_
#define SPATIALAV_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spatialav {

// Caller passed a value outside an operation's domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data is well-formed but violates a numeric or semantic invariant.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Container or header could not be parsed.
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

// Container parsed, but uses an encoding this library does not handle.
class UnsupportedFormatError : public FormatError {
 public:
  using FormatError::FormatError;
};

// A record in a line-oriented file failed validation. line() is 1-based.
class ValidationError : public DataError {
 public:
  ValidationError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A pluggable callback broke its contract (wrong output shape, etc).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spatialav

#endif  // SPATIALAV_ERRORS_H_
