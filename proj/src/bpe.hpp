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

#ifndef TOKEVAL_BPE_HPP_
#define TOKEVAL_BPE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tokeval {

// End-of-word marker appended to every word's symbol sequence during
// training and application. It never takes part in merges and is dropped
// from rendered output.
inline constexpr std::string_view kEndOfWord = "</w>";

// Prefix marking a rendered token that continues the current word.
inline constexpr std::string_view kContinuation = "@@";

// Merge-selection temperature. Positive values favor frequent pairs,
// negative values favor rare ones; kGreedy and kAntigreedy are the
// deterministic limits (argmax and argmin).
struct Temperature {
  enum class Mode { kGreedy, kAntigreedy, kValue };
  Mode mode = Mode::kGreedy;
  double value = 0.0;

  static Temperature greedy() { return {Mode::kGreedy, 0.0}; }
  static Temperature antigreedy() { return {Mode::kAntigreedy, 0.0}; }
  static Temperature of(double v);

  // Accepts "greedy", "antigreedy", or a nonzero real number.
  static Temperature parse(std::string_view text);
  std::string to_string() const;
};

struct BpeModel {
  std::vector<std::pair<std::string, std::string>> merges;
  std::size_t vocab_target = 0;
  Temperature temperature;
  std::uint64_t seed = 0;
  // Distinct symbols in the final training segmentation (marker excluded).
  std::size_t vocab_size = 0;
};

// Trains on raw text lines. Words are whitespace-split; each word starts
// as its code-point sequence plus the end-of-word marker. Every round
// either merges one adjacent pair that occurs at least twice or stops;
// training also stops once the segmentation uses `vocab_target` distinct
// symbols. Pair choice: greedy takes the most frequent pair, antigreedy
// the least frequent, and a numeric temperature samples from
// softmax(count / (temperature * max count)) with the seeded generator.
// Ties in the deterministic modes break lexicographically.
BpeModel train_bpe(std::span<const std::string> lines, std::size_t vocab_target,
                   Temperature temperature, std::uint64_t seed = 0);

// Applies a trained model to one text: splits to words, replays the
// merge list in order (leftmost match first within a word), then renders
// word pieces with the continuation prefix. Reusable across texts; keeps
// a per-word cache.
class BpeApplier {
 public:
  explicit BpeApplier(const BpeModel& model);

  std::vector<std::string> apply_text(std::string_view text);
  // Pieces of a single word, continuation prefixes already applied.
  const std::vector<std::string>& word_pieces(std::string_view word);

 private:
  struct Merge {
    std::uint32_t left;
    std::uint32_t right;
    std::uint32_t merged;
  };

  std::uint32_t intern(std::string_view surface);

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::uint32_t> symbol_ids_;
  std::vector<Merge> merges_;
  std::unordered_map<std::string, std::vector<std::string>> cache_;
};

std::vector<std::string> apply_bpe(const BpeModel& model, std::string_view text);

// Inverts the rendered form: continuation-prefixed tokens attach to the
// current word, other tokens open a new one, words join with single
// spaces. Shared by every tokenizer that emits the rendered form.
std::string detokenize(std::span<const std::string> tokens);

// Rejects raw input containing either marker, since the rendered form
// could not represent it unambiguously.
void check_markers(std::string_view text);

}  // namespace tokeval

#endif  // TOKEVAL_BPE_HPP_
