// Copyright 2026 The tweetgraph Authors.
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

#ifndef TWEETGRAPH_ERROR_H_
#define TWEETGRAPH_ERROR_H_

#include <stdexcept>
#include <string>

namespace tweetgraph {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or record. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A word, node or id could not be resolved.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// A precondition on arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace tweetgraph

#endif  // TWEETGRAPH_ERROR_H_
