// Copyright 2026 The Authors.
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

#ifndef BILLBOARD_ERRORS_H_
#define BILLBOARD_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace billboard {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. `line()` is 1-based; 0 when the error is not tied to
// a particular line.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::int64_t line,
             const std::string& what)
      : Error(path + (line > 0 ? ":" + std::to_string(line) : "") + ": " +
              what),
        line_(line) {}

  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

// Data violates a domain invariant (bad probability, unknown id, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Budgets k / l cannot be met by the instance.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A configured resource cap (e.g. exhaustive enumeration size) was exceeded.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace billboard

#endif  // BILLBOARD_ERRORS_H_
