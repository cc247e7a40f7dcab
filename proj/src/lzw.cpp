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

#include "lzw.hpp"

#include <unordered_set>

#include "bpe.hpp"
#include "errors.hpp"
#include "text.hpp"

namespace tokeval {

namespace {

// Longest dictionary entry starting at chars[start]. The dictionary is
// prefix-closed, so the match can be grown one code point at a time.
// Returns the number of code points matched (0 when even the first code
// point is unknown).
std::size_t longest_match(const std::unordered_set<std::string>& dict,
                          const std::vector<std::string_view>& chars,
                          std::size_t start, std::string& match) {
  match.clear();
  std::size_t used = 0;
  std::string probe;
  for (std::size_t i = start; i < chars.size(); ++i) {
    probe = match;
    probe.append(chars[i]);
    if (dict.find(probe) == dict.end()) {
      break;
    }
    match.swap(probe);
    ++used;
  }
  return used;
}

}  // namespace

LzwModel train_lzw(std::span<const std::string> lines,
                   std::size_t vocab_target) {
  std::string stream;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) stream += '\n';
    stream += lines[i];
  }
  if (stream.empty()) {
    throw DomainError("no training input");
  }
  auto chars = utf8_split(stream);

  LzwModel model;
  model.vocab_target = vocab_target;
  std::unordered_set<std::string> dict;
  for (auto ch : chars) {
    auto s = std::string(ch);
    if (dict.insert(s).second) {
      model.entries.push_back(std::move(s));
    }
  }
  if (vocab_target < model.entries.size()) {
    throw UsageError("vocabulary target is below the character count");
  }

  std::string match;
  std::size_t pos = 0;
  while (pos < chars.size() && model.entries.size() < vocab_target) {
    std::size_t used = longest_match(dict, chars, pos, match);
    if (pos + used < chars.size()) {
      std::string extended = match;
      extended.append(chars[pos + used]);
      if (dict.insert(extended).second) {
        model.entries.push_back(std::move(extended));
      }
    }
    pos += used;
  }
  return model;
}

std::vector<std::string> apply_lzw(const LzwModel& model,
                                   std::string_view text) {
  LzwApplier applier(model);
  return applier.segment(text);
}

LzwApplier::LzwApplier(const LzwModel& model)
    : dict_(model.entries.begin(), model.entries.end()) {}

std::vector<std::string> LzwApplier::segment(std::string_view text) const {
  auto chars = utf8_split(text);
  std::vector<std::string> tokens;
  std::string match;
  std::size_t pos = 0;
  while (pos < chars.size()) {
    std::size_t used = longest_match(dict_, chars, pos, match);
    if (used == 0) {
      throw CoverageError("dictionary does not cover character '" +
                          std::string(chars[pos]) + "'");
    }
    tokens.push_back(match);
    pos += used;
  }
  return tokens;
}

std::vector<std::string> LzwApplier::apply_text(std::string_view text) {
  check_markers(text);
  std::vector<std::string> tokens;
  for (auto word : split_whitespace(text)) {
    auto pieces = segment(word);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (i == 0) {
        tokens.push_back(std::move(pieces[i]));
      } else {
        tokens.push_back(std::string(kContinuation) + pieces[i]);
      }
    }
  }
  return tokens;
}

}  // namespace tokeval
