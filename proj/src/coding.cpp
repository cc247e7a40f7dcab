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

#include "coding.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

#include "errors.hpp"
#include "metrics.hpp"
#include "text.hpp"

namespace tokeval {

namespace {

constexpr double kCeilNudge = 1e-9;
constexpr double kBoundSlack = 1e-9;

void check_radix(int radix) {
  if (radix < 2) {
    throw UsageError("code radix must be at least 2");
  }
}

char digit_char(int d) {
  return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
}

// Huffman tree node. Leaves hold an entry index into the distribution
// (or none for a padding dummy); weight order breaks ties by the
// smallest token id contained in the subtree, then by creation order.
struct Node {
  double weight = 0.0;
  std::uint64_t min_id = 0;
  std::uint32_t seq = 0;
  int entry = -1;                  // distribution entry for leaves
  std::vector<std::uint32_t> kids;  // child node indices, digit order
};

std::uint32_t tree_length_of(const std::vector<Node>& pool, std::uint32_t root,
                             std::vector<std::uint32_t>& lengths,
                             std::vector<std::string>& codewords,
                             bool materialize) {
  // Iterative DFS assigning depths (and codeword strings when asked).
  struct Frame {
    std::uint32_t node;
    std::uint32_t depth;
    std::string prefix;
  };
  std::vector<Frame> stack;
  stack.push_back({root, 0, ""});
  std::uint32_t max_depth = 0;
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const Node& node = pool[f.node];
    if (node.entry >= 0) {
      lengths[node.entry] = std::max<std::uint32_t>(f.depth, 1);
      if (materialize) {
        codewords[node.entry] = f.prefix.empty() ? "0" : f.prefix;
      }
      max_depth = std::max(max_depth, f.depth);
      continue;
    }
    for (std::size_t d = 0; d < node.kids.size(); ++d) {
      Frame child{node.kids[d], f.depth + 1, ""};
      if (materialize) {
        child.prefix = f.prefix + digit_char(static_cast<int>(d));
      }
      stack.push_back(std::move(child));
    }
  }
  return max_depth;
}

}  // namespace

CodeBook huffman_code(const UnigramDistribution& dist, int radix) {
  check_radix(radix);
  const std::size_t v = dist.size();
  if (v == 0) {
    throw DomainError("empty distribution");
  }
  TokenId max_id = *std::max_element(dist.ids.begin(), dist.ids.end());

  CodeBook code;
  code.radix = radix;
  code.lengths.assign(max_id + 1, 0);
  const bool materialize = radix <= 36;
  if (materialize) {
    code.codewords.assign(max_id + 1, "");
  }

  std::vector<Node> pool;
  using Key = std::tuple<double, std::uint64_t, std::uint32_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;

  std::vector<std::uint32_t> entry_lengths(v, 0);
  std::vector<std::string> entry_words(v);

  for (std::size_t k = 0; k < v; ++k) {
    pool.push_back(Node{dist.probs[k], dist.ids[k],
                        static_cast<std::uint32_t>(pool.size()),
                        static_cast<int>(k), {}});
    heap.push({dist.probs[k], dist.ids[k], pool.back().seq});
  }
  // Zero-probability dummies so every merge can take a full set of
  // `radix` children. Their ids sort after every real token.
  if (radix > 2 && v > 1) {
    std::size_t pad =
        (radix - 1 - (v - 1) % (radix - 1)) % static_cast<std::size_t>(radix - 1);
    for (std::size_t k = 0; k < pad; ++k) {
      pool.push_back(Node{0.0, max_id + 1 + k,
                          static_cast<std::uint32_t>(pool.size()), -1, {}});
      heap.push({0.0, max_id + 1 + k, pool.back().seq});
    }
  }

  while (heap.size() > 1) {
    Node parent;
    parent.weight = 0.0;
    parent.min_id = ~std::uint64_t{0};
    parent.seq = static_cast<std::uint32_t>(pool.size());
    for (int d = 0; d < radix && !heap.empty(); ++d) {
      auto [w, mid, seq] = heap.top();
      heap.pop();
      parent.weight += w;
      parent.min_id = std::min(parent.min_id, mid);
      parent.kids.push_back(seq);
    }
    pool.push_back(parent);
    heap.push({parent.weight, parent.min_id, parent.seq});
  }

  auto [w, mid, root] = heap.top();
  (void)w;
  (void)mid;
  tree_length_of(pool, root, entry_lengths, entry_words, materialize);

  for (std::size_t k = 0; k < v; ++k) {
    code.lengths[dist.ids[k]] = entry_lengths[k];
    if (materialize) {
      code.codewords[dist.ids[k]] = entry_words[k];
    }
  }
  return code;
}

CodeBook uniform_code(std::size_t vocab_size, int radix) {
  check_radix(radix);
  if (vocab_size == 0) {
    throw DomainError("empty vocabulary");
  }
  // Smallest length with radix^length >= vocab_size, in integer math.
  std::uint32_t length = 1;
  std::size_t reach = static_cast<std::size_t>(radix);
  while (reach < vocab_size) {
    ++length;
    reach *= static_cast<std::size_t>(radix);
  }

  CodeBook code;
  code.radix = radix;
  code.lengths.assign(vocab_size, length);
  if (radix <= 36) {
    code.codewords.resize(vocab_size);
    for (std::size_t i = 0; i < vocab_size; ++i) {
      std::string word(length, '0');
      std::size_t rem = i;
      for (std::uint32_t d = 0; d < length; ++d) {
        word[length - 1 - d] = digit_char(static_cast<int>(rem % radix));
        rem /= static_cast<std::size_t>(radix);
      }
      code.codewords[i] = std::move(word);
    }
  }
  return code;
}

CodeBook campbell_lengths(const UnigramDistribution& dist, double order,
                          int radix) {
  check_radix(radix);
  if (!(order > 0.0) || std::isinf(order)) {
    throw UsageError("code lengths need a finite entropy order > 0");
  }
  if (dist.size() == 0) {
    throw DomainError("empty distribution");
  }
  const double ln_radix = std::log(static_cast<double>(radix));
  // log_radix sum p^order, max-shifted for stability.
  double m = -std::numeric_limits<double>::infinity();
  for (double p : dist.probs) m = std::max(m, order * std::log(p));
  double acc = 0.0;
  for (double p : dist.probs) acc += std::exp(order * std::log(p) - m);
  const double log_power_sum = (m + std::log(acc)) / ln_radix;

  TokenId max_id = *std::max_element(dist.ids.begin(), dist.ids.end());
  CodeBook code;
  code.radix = radix;
  code.lengths.assign(max_id + 1, 0);
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double ideal =
        -order * std::log(dist.probs[k]) / ln_radix + log_power_sum;
    auto len = static_cast<std::int64_t>(std::ceil(ideal - kCeilNudge));
    code.lengths[dist.ids[k]] = static_cast<std::uint32_t>(std::max<std::int64_t>(len, 1));
  }
  return code;
}

namespace {

std::uint32_t covered_length(const UnigramDistribution& dist,
                             const CodeBook& code, std::size_t k) {
  TokenId id = dist.ids[k];
  if (!code.covers(id)) {
    throw CoverageError("code does not cover type '" + dist.label(k) + "'");
  }
  return code.lengths[id];
}

}  // namespace

double expected_code_length(const UnigramDistribution& dist,
                            const CodeBook& code) {
  if (dist.size() == 0) {
    throw DomainError("empty distribution");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    acc += dist.probs[k] * covered_length(dist, code, k);
  }
  return acc;
}

double discounted_code_length(const UnigramDistribution& dist,
                              const CodeBook& code, double s) {
  if (std::isnan(s) || s <= -1.0) {
    throw UsageError("discount exponent must be > -1");
  }
  if (dist.size() == 0) {
    throw DomainError("empty distribution");
  }
  if (s == 0.0) {
    return expected_code_length(dist, code);
  }
  if (std::isinf(s)) {
    std::uint32_t longest = 0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
      longest = std::max(longest, covered_length(dist, code, k));
    }
    return longest;
  }
  // (1/s) log_radix sum p * radix^(s*len), computed as a shifted
  // log-sum-exp in natural logs.
  const double ln_radix = std::log(static_cast<double>(code.radix));
  std::vector<double> exponents;
  exponents.reserve(dist.size());
  for (std::size_t k = 0; k < dist.size(); ++k) {
    exponents.push_back(std::log(dist.probs[k]) +
                        s * covered_length(dist, code, k) * ln_radix);
  }
  double m = *std::max_element(exponents.begin(), exponents.end());
  double acc = 0.0;
  for (double x : exponents) acc += std::exp(x - m);
  return (m + std::log(acc)) / (s * ln_radix);
}

double kraft_sum(const CodeBook& code) {
  double acc = 0.0;
  for (std::uint32_t len : code.lengths) {
    if (len != 0) {
      acc += std::pow(static_cast<double>(code.radix),
                      -static_cast<double>(len));
    }
  }
  return acc;
}

namespace {

double text_code_length(const std::vector<TokenId>& text,
                        const TokenizedCorpus& corpus, const CodeBook& code) {
  double total = 0.0;
  for (TokenId id : text) {
    if (!code.covers(id)) {
      throw CoverageError("code does not cover type '" +
                          corpus.vocab->surface(id) + "'");
    }
    total += code.lengths[id];
  }
  return total;
}

}  // namespace

double corpus_code_length(const TokenizedCorpus& corpus, const CodeBook& code) {
  if (corpus.texts.empty()) {
    throw DomainError("empty corpus");
  }
  double acc = 0.0;
  for (const auto& text : corpus.texts) {
    acc += text_code_length(text, corpus, code);
  }
  return acc / static_cast<double>(corpus.num_texts());
}

double covariance_term(const TokenizedCorpus& corpus, const CodeBook& code) {
  if (corpus.texts.empty()) {
    throw DomainError("empty corpus");
  }
  const std::size_t m = corpus.num_texts();
  std::vector<double> mean_len(m);  // code length per token, one per text
  std::vector<double> tokens(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& text = corpus.texts[i];
    tokens[i] = static_cast<double>(text.size());
    mean_len[i] = text_code_length(text, corpus, code) / tokens[i];
  }
  double mu_len = 0.0;
  double mu_tok = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mu_len += mean_len[i];
    mu_tok += tokens[i];
  }
  mu_len /= static_cast<double>(m);
  mu_tok /= static_cast<double>(m);
  double cov = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cov += (mean_len[i] - mu_len) * (tokens[i] - mu_tok);
  }
  return cov / static_cast<double>(m);
}

BoundReport verify_bounds(const TokenizedCorpus& corpus, double order,
                          int radix) {
  check_radix(radix);
  if (!(order > 0.0) || std::isinf(order)) {
    throw UsageError("bound verification needs a finite entropy order > 0");
  }
  if (corpus.texts.empty()) {
    throw DomainError("empty corpus");
  }
  // The decomposition below is exact for the text-averaged estimator
  // (each text weighted equally), so that is the distribution both
  // codes are built on.
  auto dist = unigram_distribution(corpus, TypeWeighting::kTextAveraged);
  const auto base = static_cast<double>(radix);

  BoundReport r;
  r.order = order;
  r.radix = radix;
  r.num_texts = corpus.num_texts();
  r.num_tokens = corpus.num_tokens();
  r.num_types = dist.size();

  CodeBook huffman = huffman_code(dist, radix);
  r.entropy = shannon_entropy(dist, base);
  r.renyi_entropy_value = renyi_entropy(dist, order, base);
  r.expected_len = expected_length(corpus);
  r.corpus_code_len = corpus_code_length(corpus, huffman);
  r.covariance = covariance_term(corpus, huffman);
  r.expected_code_len = expected_code_length(dist, huffman);
  r.lemma_residual =
      r.corpus_code_len - (r.expected_len * r.expected_code_len + r.covariance);
  r.middle = (r.corpus_code_len - r.covariance) / r.expected_len;
  r.shannon_upper_ceil = std::ceil(r.entropy - kCeilNudge);

  CodeBook campbell = campbell_lengths(dist, order, radix);
  const double s = 1.0 / order - 1.0;
  r.campbell_discounted = discounted_code_length(dist, campbell, s);

  r.pass_identity = std::abs(r.lemma_residual) <= kBoundSlack;
  r.pass_shannon_lower = r.entropy <= r.middle + kBoundSlack;
  r.pass_shannon_upper_ceil = r.middle <= r.shannon_upper_ceil + kBoundSlack;
  r.pass_shannon_upper = r.middle < r.entropy + 1.0 + kBoundSlack;
  r.pass_campbell_lower =
      r.renyi_entropy_value <= r.campbell_discounted + kBoundSlack;
  r.pass_campbell_upper =
      r.campbell_discounted < r.renyi_entropy_value + 1.0 + kBoundSlack;
  r.all_pass = r.pass_identity && r.pass_shannon_lower &&
               r.pass_shannon_upper_ceil && r.pass_campbell_lower &&
               r.pass_campbell_upper;
  return r;
}

std::string to_text(const BoundReport& r) {
  std::string out;
  auto put = [&out](const char* name, const std::string& value) {
    out += name;
    out += '\t';
    out += value;
    out += '\n';
  };
  auto put_num = [&put](const char* name, double value) {
    put(name, format_double(value));
  };
  auto put_flag = [&put](const char* name, bool value) {
    put(name, value ? "1" : "0");
  };
  put_num("order", r.order);
  put("radix", std::to_string(r.radix));
  put("num_texts", std::to_string(r.num_texts));
  put("num_tokens", std::to_string(r.num_tokens));
  put("num_types", std::to_string(r.num_types));
  put_num("entropy", r.entropy);
  put_num("renyi_entropy", r.renyi_entropy_value);
  put_num("expected_length", r.expected_len);
  put_num("corpus_code_length", r.corpus_code_len);
  put_num("covariance", r.covariance);
  put_num("expected_code_length", r.expected_code_len);
  put_num("lemma_residual", r.lemma_residual);
  put_num("shannon_lower", r.entropy);
  put_num("shannon_middle", r.middle);
  put_num("shannon_upper_ceil", r.shannon_upper_ceil);
  put_num("shannon_upper", r.entropy + 1.0);
  put_num("campbell_lower", r.renyi_entropy_value);
  put_num("campbell_discounted", r.campbell_discounted);
  put_num("campbell_upper", r.renyi_entropy_value + 1.0);
  put_flag("pass_identity", r.pass_identity);
  put_flag("pass_shannon_lower", r.pass_shannon_lower);
  put_flag("pass_shannon_upper_ceil", r.pass_shannon_upper_ceil);
  put_flag("pass_shannon_upper", r.pass_shannon_upper);
  put_flag("pass_campbell_lower", r.pass_campbell_lower);
  put_flag("pass_campbell_upper", r.pass_campbell_upper);
  put_flag("all_pass", r.all_pass);
  return out;
}

}  // namespace tokeval
