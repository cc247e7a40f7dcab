// Copyright 2026 The tokeval authors.
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

#ifndef TOKEVAL_ERRORS_HPP_
#define TOKEVAL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tokeval {

// Base class for all tokeval errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// File could not be opened or read/written.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Caller passed an invalid argument: unknown metric name, negative
// entropy order, malformed temperature, bad percentile range, ...
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

// Input data is structurally valid but outside the operation's domain:
// empty corpus, single-type vocabulary for an efficiency, constant
// input to a correlation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A code book or tokenizer dictionary does not cover the input.
class CoverageError : public Error {
 public:
  explicit CoverageError(const std::string& what) : Error(what) {}
};

}  // namespace tokeval

#endif  // TOKEVAL_ERRORS_HPP_
