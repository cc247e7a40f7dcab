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

#ifndef TOKEVAL_LZW_HPP_
#define TOKEVAL_LZW_HPP_

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tokeval {

// Dictionary in insertion order. Every code point seen in training is an
// entry, and every multi-character entry extends another entry by one
// code point, so the set is closed under prefixes.
struct LzwModel {
  std::vector<std::string> entries;
  std::size_t vocab_target = 0;
};

// Single training pass over the lines joined with '\n' (the separator is
// an ordinary dictionary character): at each position take the longest
// dictionary match, then add match + next code point until the
// dictionary holds `vocab_target` entries.
LzwModel train_lzw(std::span<const std::string> lines,
                   std::size_t vocab_target);

// Greedy longest-match segmentation of raw text. The concatenation of
// the result is exactly `text`. A code point missing from the dictionary
// raises CoverageError naming it.
std::vector<std::string> apply_lzw(const LzwModel& model,
                                   std::string_view text);

// Word-by-word application used for the rendered token format: each
// whitespace-split word is segmented independently and continuation
// pieces get the rendering prefix.
class LzwApplier {
 public:
  explicit LzwApplier(const LzwModel& model);

  std::vector<std::string> apply_text(std::string_view text);
  std::vector<std::string> segment(std::string_view text) const;

 private:
  std::unordered_set<std::string> dict_;
};

}  // namespace tokeval

#endif  // TOKEVAL_LZW_HPP_
