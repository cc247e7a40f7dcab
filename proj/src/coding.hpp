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

#ifndef TOKEVAL_CODING_HPP_
#define TOKEVAL_CODING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace tokeval {

// A prefix-free code over token ids. `lengths[id]` is the codeword length
// in radix-`radix` symbols, with 0 marking an id the code does not cover.
// Codewords are materialized for radix <= 36 ('0'-'9' then 'a'-'z').
struct CodeBook {
  int radix = 2;
  std::vector<std::uint32_t> lengths;
  std::vector<std::string> codewords;

  bool covers(TokenId id) const {
    return id < lengths.size() && lengths[id] != 0;
  }
};

// Deterministic Huffman code for the distribution. Ties between equal
// weights break toward the smallest contained token id, then toward the
// earlier-created subtree. Radix > 2 pads with zero-probability dummy
// leaves so that (leaves - 1) mod (radix - 1) == 0. A single-type
// distribution gets the one-symbol code of length 1.
CodeBook huffman_code(const UnigramDistribution& dist, int radix = 2);

// Equal-length code: every one of `vocab_size` ids gets length
// ceil(log_radix vocab_size), minimum 1.
CodeBook uniform_code(std::size_t vocab_size, int radix = 2);

// Integer code lengths ceil(-order*log_radix p + log_radix sum_q p(q)^order)
// rounded from the ideal real-valued lengths, clamped to a minimum of 1.
// Requires a finite order > 0. Kraft-feasible by construction.
CodeBook campbell_lengths(const UnigramDistribution& dist, double order,
                          int radix = 2);

// sum_id p(id) * length(id). Throws CoverageError naming the first type
// the code does not cover.
double expected_code_length(const UnigramDistribution& dist,
                            const CodeBook& code);

// Exponentially discounted expected code length
//   s = 0:        expected_code_length
//   s = inf:      max covered length
//   s in (-1,0) u (0,inf): (1/s) log_radix sum p * radix^(s*length)
// Values s <= -1 are rejected.
double discounted_code_length(const UnigramDistribution& dist,
                              const CodeBook& code, double s);

// sum radix^(-length) over covered ids.
double kraft_sum(const CodeBook& code);

// Mean over texts of the summed codeword length of the whole text.
double corpus_code_length(const TokenizedCorpus& corpus, const CodeBook& code);

// Population covariance (1/M normalization) across texts between the
// text's mean code length per token and the text's token count.
double covariance_term(const TokenizedCorpus& corpus, const CodeBook& code);

// Everything verify_bounds measures, plus the pass flags. The Huffman
// sandwich is reported against two upper bounds: the ceiling form
// ceil(H) carried by `pass_shannon_upper_ceil`, and the classical
// H + 1 form carried by `pass_shannon_upper`. The ceiling form is
// strictly stronger and fails on some skewed distributions even for an
// optimal code (e.g. p = (0.9, 0.05, 0.05): expected length 1.1 with
// ceil(H) = 1), so `all_pass` follows the ceiling-form convention and
// callers that need an unconditional check read `pass_shannon_upper`.
struct BoundReport {
  double order = 0.0;
  int radix = 2;
  std::size_t num_texts = 0;
  std::size_t num_tokens = 0;
  std::size_t num_types = 0;

  double entropy = 0.0;              // H, base radix
  double renyi_entropy_value = 0.0;  // H_order, base radix
  double expected_len = 0.0;         // E[L], tokens per text
  double corpus_code_len = 0.0;      // Huffman, mean per text
  double covariance = 0.0;
  double expected_code_len = 0.0;    // Huffman, per token
  double lemma_residual = 0.0;
  double middle = 0.0;               // (corpus_code_len - covariance) / E[L]
  double shannon_upper_ceil = 0.0;   // ceil(H)
  double campbell_discounted = 0.0;  // L^(s) at s = 1/order - 1

  bool pass_identity = false;
  bool pass_shannon_lower = false;
  bool pass_shannon_upper_ceil = false;
  bool pass_shannon_upper = false;
  bool pass_campbell_lower = false;
  bool pass_campbell_upper = false;
  bool all_pass = false;
};

// Builds Huffman and Campbell codes over the text-averaged unigram
// distribution of the corpus and checks the coding-theorem sandwiches
// plus the exact decomposition
//   corpus_code_len = E[L] * expected_code_len + covariance.
// Requires a finite order > 0.
BoundReport verify_bounds(const TokenizedCorpus& corpus, double order,
                          int radix = 2);

// One "name<TAB>value" line per field.
std::string to_text(const BoundReport& report);

}  // namespace tokeval

#endif  // TOKEVAL_CODING_HPP_
