// Copyright 2026 The svmweave Authors
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

#ifndef SVMWEAVE_SUPPORT_ERROR_H_
#define SVMWEAVE_SUPPORT_ERROR_H_

#include <stdexcept>
#include <string>

namespace svmweave {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed assembly text. `line` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// A structurally invalid program (bad slot, dangling jump, unknown callee...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Raised while weaving; the message names the transformer and the shadow.
class WeaveError : public Error {
 public:
  using Error::Error;
};

// Malformed bad-prefix expression. `position` is a 0-based column.
class RegexError : public Error {
 public:
  RegexError(std::size_t position, const std::string& message)
      : Error("at " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace svmweave

#endif  // SVMWEAVE_SUPPORT_ERROR_H_
