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

#ifndef TOKEVAL_TEXT_HPP_
#define TOKEVAL_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace tokeval {

// Reads a whole UTF-8 text file into lines. Strips trailing '\r'.
// Throws IoError naming the path if the file cannot be opened.
std::vector<std::string> read_lines(const std::string& path);

// Splits on runs of spaces and tabs; never returns empty pieces.
std::vector<std::string_view> split_whitespace(std::string_view line);

// Splits a UTF-8 string into code points. Bytes that do not form a
// valid sequence are passed through one at a time.
std::vector<std::string_view> utf8_split(std::string_view text);

// Shortest decimal form that parses back to exactly the same double,
// with at least 13 significant digits.
std::string format_double(double value);

// Fixed 10-significant-digit form used in exported tables.
std::string format_double_10(double value);

}  // namespace tokeval

#endif  // TOKEVAL_TEXT_HPP_
