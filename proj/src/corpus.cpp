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

#include "corpus.hpp"

#include <cmath>
#include <numeric>

#include "errors.hpp"
#include "text.hpp"

namespace tokeval {

TokenId Vocabulary::intern(std::string_view surface) {
  auto it = index_.find(std::string(surface));
  if (it != index_.end()) {
    return it->second;
  }
  TokenId id = static_cast<TokenId>(surfaces_.size());
  surfaces_.emplace_back(surface);
  index_.emplace(surfaces_.back(), id);
  return id;
}

std::optional<TokenId> Vocabulary::find(std::string_view surface) const {
  auto it = index_.find(std::string(surface));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t TokenizedCorpus::num_tokens() const {
  std::size_t n = 0;
  for (const auto& text : texts) {
    n += text.size();
  }
  return n;
}

std::string UnigramDistribution::label(std::size_t k) const {
  if (vocab) {
    return vocab->surface(ids[k]);
  }
  return "#" + std::to_string(ids[k]);
}

namespace {

void append_lines(std::span<const std::string> lines, Vocabulary& vocab,
                  std::vector<std::vector<TokenId>>& texts) {
  for (const auto& line : lines) {
    auto pieces = split_whitespace(line);
    if (pieces.empty()) {
      continue;
    }
    std::vector<TokenId> text;
    text.reserve(pieces.size());
    for (auto piece : pieces) {
      text.push_back(vocab.intern(piece));
    }
    texts.push_back(std::move(text));
  }
}

}  // namespace

TokenizedCorpus load_tokenized(std::span<const std::string> paths) {
  if (paths.empty()) {
    throw UsageError("no input files given");
  }
  auto vocab = std::make_shared<Vocabulary>();
  std::vector<std::vector<TokenId>> texts;
  for (const auto& path : paths) {
    auto lines = read_lines(path);
    std::size_t before = texts.size();
    append_lines(lines, *vocab, texts);
    if (texts.size() == before) {
      throw DomainError("no tokenized texts in file: " + path);
    }
  }
  return TokenizedCorpus{std::move(vocab), std::move(texts)};
}

TokenizedCorpus corpus_from_lines(std::span<const std::string> lines) {
  auto vocab = std::make_shared<Vocabulary>();
  std::vector<std::vector<TokenId>> texts;
  append_lines(lines, *vocab, texts);
  if (texts.empty()) {
    throw DomainError("no tokenized texts in input");
  }
  return TokenizedCorpus{std::move(vocab), std::move(texts)};
}

UnigramDistribution unigram_distribution(const TokenizedCorpus& corpus,
                                         TypeWeighting weighting) {
  const std::size_t v = corpus.vocab_size();
  if (corpus.texts.empty() || v == 0) {
    throw DomainError("empty corpus has no unigram distribution");
  }
  std::vector<std::int64_t> counts(v, 0);
  std::vector<double> mass(v, 0.0);
  std::int64_t total = 0;
  const double text_weight = 1.0 / static_cast<double>(corpus.texts.size());
  for (const auto& text : corpus.texts) {
    for (TokenId id : text) {
      ++counts[id];
    }
    total += static_cast<std::int64_t>(text.size());
    if (weighting == TypeWeighting::kTextAveraged) {
      const double per_token = text_weight / static_cast<double>(text.size());
      for (TokenId id : text) {
        mass[id] += per_token;
      }
    }
  }

  UnigramDistribution dist;
  dist.vocab = corpus.vocab;
  dist.total_tokens = total;
  for (TokenId id = 0; id < v; ++id) {
    if (counts[id] == 0) {
      continue;
    }
    dist.ids.push_back(id);
    dist.counts.push_back(counts[id]);
    if (weighting == TypeWeighting::kTokenPooled) {
      dist.probs.push_back(static_cast<double>(counts[id]) /
                           static_cast<double>(total));
    } else {
      dist.probs.push_back(mass[id]);
    }
  }
  return dist;
}

UnigramDistribution distribution_from_probs(std::span<const double> probs) {
  if (probs.empty()) {
    throw UsageError("empty probability vector");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw UsageError("probabilities must be positive and finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw UsageError("probabilities must sum to 1 (got " + format_double(sum) +
                     ")");
  }
  UnigramDistribution dist;
  dist.probs.assign(probs.begin(), probs.end());
  for (double& p : dist.probs) {
    p /= sum;
  }
  dist.ids.resize(dist.probs.size());
  std::iota(dist.ids.begin(), dist.ids.end(), TokenId{0});
  return dist;
}

double expected_length(const TokenizedCorpus& corpus) {
  if (corpus.texts.empty()) {
    throw DomainError("empty corpus has no expected length");
  }
  return static_cast<double>(corpus.num_tokens()) /
         static_cast<double>(corpus.num_texts());
}

std::vector<double> per_text_unigram_proportions(const TokenizedCorpus& corpus,
                                                 std::size_t text_index) {
  if (text_index >= corpus.texts.size()) {
    throw UsageError("text index out of range");
  }
  const auto& text = corpus.texts[text_index];
  std::vector<double> prop(corpus.vocab_size(), 0.0);
  const double per_token = 1.0 / static_cast<double>(text.size());
  for (TokenId id : text) {
    prop[id] += per_token;
  }
  return prop;
}

}  // namespace tokeval
