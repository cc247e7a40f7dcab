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

#ifndef TOKEVAL_CORPUS_HPP_
#define TOKEVAL_CORPUS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tokeval {

using TokenId = std::uint32_t;

// Interned token surfaces. Ids are dense and assigned in first-seen order.
class Vocabulary {
 public:
  TokenId intern(std::string_view surface);
  std::optional<TokenId> find(std::string_view surface) const;
  const std::string& surface(TokenId id) const { return surfaces_[id]; }
  std::size_t size() const { return surfaces_.size(); }

 private:
  std::vector<std::string> surfaces_;
  std::unordered_map<std::string, TokenId> index_;
};

// A corpus of token-id sequences over a shared vocabulary. One entry of
// `texts` per input line; empty lines are dropped at ingestion.
struct TokenizedCorpus {
  std::shared_ptr<const Vocabulary> vocab;
  std::vector<std::vector<TokenId>> texts;

  std::size_t num_texts() const { return texts.size(); }
  std::size_t num_tokens() const;
  std::size_t vocab_size() const { return vocab ? vocab->size() : 0; }
};

// How type probabilities are estimated from a corpus.
//   kTokenPooled:  count(type) / total tokens, all files pooled.
//   kTextAveraged: mean over texts of the within-text proportion. Equals
//                  the pooled estimate when all texts have equal length.
enum class TypeWeighting {
  kTokenPooled,
  kTextAveraged,
};

// Unigram type distribution. `ids[k]`, `probs[k]`, `counts[k]` describe
// the k-th type; types with zero count are never present. Distributions
// built directly from probabilities carry no vocabulary and no counts.
struct UnigramDistribution {
  std::shared_ptr<const Vocabulary> vocab;
  std::vector<TokenId> ids;
  std::vector<double> probs;
  std::vector<std::int64_t> counts;
  std::int64_t total_tokens = 0;

  std::size_t size() const { return probs.size(); }
  std::string label(std::size_t k) const;
};

// Reads one or more tokenized text files (UTF-8, one text per line,
// tokens separated by runs of spaces/tabs) into a single pooled corpus.
// Throws IoError for an unreadable file and DomainError for a file with
// zero non-empty lines, naming the path in both cases.
TokenizedCorpus load_tokenized(std::span<const std::string> paths);

// In-memory variant of load_tokenized for already-split lines.
// Empty lines are skipped; throws DomainError if nothing remains.
TokenizedCorpus corpus_from_lines(std::span<const std::string> lines);

UnigramDistribution unigram_distribution(
    const TokenizedCorpus& corpus,
    TypeWeighting weighting = TypeWeighting::kTokenPooled);

// Validates and wraps an explicit probability vector (used for synthetic
// distributions). Probabilities must be positive and sum to 1 within 1e-9.
UnigramDistribution distribution_from_probs(std::span<const double> probs);

// Mean token count per text.
double expected_length(const TokenizedCorpus& corpus);

// Within-text type proportions for one text, dense over the vocabulary.
std::vector<double> per_text_unigram_proportions(const TokenizedCorpus& corpus,
                                                 std::size_t text_index);

}  // namespace tokeval

#endif  // TOKEVAL_CORPUS_HPP_
