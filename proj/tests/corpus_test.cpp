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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "errors.hpp"
#include "helpers.hpp"
#include "text.hpp"

using namespace tokeval;

TEST_CASE("vocabulary interns in first-seen order") {
  Vocabulary vocab;
  CHECK(vocab.intern("b") == 0);
  CHECK(vocab.intern("a") == 1);
  CHECK(vocab.intern("b") == 0);
  CHECK(vocab.size() == 2);
  CHECK(vocab.surface(0) == "b");
  CHECK(vocab.surface(1) == "a");
  CHECK(vocab.find("a").value() == 1);
  CHECK_FALSE(vocab.find("missing").has_value());
}

TEST_CASE("whitespace splitting handles runs of blanks and tabs") {
  const auto tokens = split_whitespace("  a\tb \t c  ");
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0] == "a");
  CHECK(tokens[1] == "b");
  CHECK(tokens[2] == "c");
  CHECK(split_whitespace("").empty());
  CHECK(split_whitespace(" \t ").empty());
}

TEST_CASE("utf8 splitting yields one piece per code point") {
  // One code point each of width 1, 2, 3, and 4 bytes.
  const auto pieces = utf8_split("a\xC3\xA9\xE2\x82\xAC\xF0\x9F\x98\x80");
  REQUIRE(pieces.size() == 4);
  CHECK(pieces[0] == "a");
  CHECK(pieces[1] == "\xC3\xA9");
  CHECK(pieces[2] == "\xE2\x82\xAC");
  CHECK(pieces[3] == "\xF0\x9F\x98\x80");
}

TEST_CASE("corpus_from_lines skips empty lines and counts tokens") {
  const std::vector<std::string> lines = {"a b a", "", "b c"};
  const auto corpus = corpus_from_lines(lines);
  CHECK(corpus.num_texts() == 2);
  CHECK(corpus.num_tokens() == 5);
  CHECK(corpus.vocab_size() == 3);
  CHECK(expected_length(corpus) == 2.5);
}

TEST_CASE("corpus_from_lines rejects an all-empty input") {
  const std::vector<std::string> lines = {"", "   "};
  CHECK_THROWS_AS((void)corpus_from_lines(lines), DomainError);
}

TEST_CASE("load_tokenized pools files and strips carriage returns") {
  testutil::TempDir dir;
  const auto first = dir.file("first.tok");
  const auto second = dir.file("second.tok");
  testutil::write_file(first, "a b\r\nc\r\n");
  testutil::write_file(second, "a a\n");
  const std::vector<std::string> paths = {first, second};
  const auto corpus = load_tokenized(paths);
  CHECK(corpus.num_texts() == 3);
  CHECK(corpus.num_tokens() == 5);
  CHECK(corpus.vocab_size() == 3);
  CHECK(corpus.vocab->surface(0) == "a");
}

TEST_CASE("load_tokenized failures name the offending file") {
  testutil::TempDir dir;
  const auto missing = dir.file("missing.tok");
  const std::vector<std::string> bad = {missing};
  CHECK_THROWS_WITH_AS((void)load_tokenized(bad),
                       doctest::Contains("missing.tok"), IoError);

  const auto empty = dir.file("empty.tok");
  testutil::write_file(empty, "\n\n");
  const std::vector<std::string> blank = {empty};
  CHECK_THROWS_WITH_AS((void)load_tokenized(blank),
                       doctest::Contains("empty.tok"), DomainError);

  const std::vector<std::string> none = {};
  CHECK_THROWS_AS((void)load_tokenized(none), UsageError);
}

TEST_CASE("pooled distribution divides counts by total tokens") {
  const std::vector<std::string> lines = {"a a a b", "b c"};
  const auto corpus = corpus_from_lines(lines);
  const auto dist = unigram_distribution(corpus, TypeWeighting::kTokenPooled);
  REQUIRE(dist.size() == 3);
  CHECK(dist.total_tokens == 6);
  CHECK(dist.probs[0] == doctest::Approx(3.0 / 6.0).epsilon(1e-15));
  CHECK(dist.probs[1] == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(dist.probs[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(dist.counts[0] == 3);
  CHECK(dist.label(0) == "a");
}

TEST_CASE("averaged distribution weights every text equally") {
  // Texts "a" and "b b": the pooled estimate gives b two thirds, the
  // per-text average gives both types one half.
  const std::vector<std::string> lines = {"a", "b b"};
  const auto corpus = corpus_from_lines(lines);
  const auto pooled = unigram_distribution(corpus, TypeWeighting::kTokenPooled);
  const auto averaged =
      unigram_distribution(corpus, TypeWeighting::kTextAveraged);
  CHECK(pooled.probs[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(pooled.probs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(averaged.probs[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(averaged.probs[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("distribution skips vocabulary entries with zero count") {
  auto vocab = std::make_shared<Vocabulary>();
  const TokenId a = vocab->intern("a");
  (void)vocab->intern("unused");
  const TokenId c = vocab->intern("c");
  TokenizedCorpus corpus;
  corpus.vocab = vocab;
  corpus.texts = {{a, c, c}};
  const auto dist = unigram_distribution(corpus);
  REQUIRE(dist.size() == 2);
  CHECK(dist.ids[0] == a);
  CHECK(dist.ids[1] == c);
  CHECK(dist.probs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("distribution_from_probs validates and normalizes") {
  const std::vector<double> good = {0.25, 0.25, 0.5};
  const auto dist = distribution_from_probs(good);
  CHECK(dist.size() == 3);
  CHECK(dist.probs[2] == 0.5);
  CHECK(dist.label(1) == "#1");

  const std::vector<double> short_sum = {0.2, 0.2};
  CHECK_THROWS_AS((void)distribution_from_probs(short_sum), UsageError);
  const std::vector<double> negative = {1.5, -0.5};
  CHECK_THROWS_AS((void)distribution_from_probs(negative), UsageError);
  const std::vector<double> zero = {1.0, 0.0};
  CHECK_THROWS_AS((void)distribution_from_probs(zero), UsageError);
}

TEST_CASE("per-text proportions are dense over the vocabulary") {
  const std::vector<std::string> lines = {"a b b", "c"};
  const auto corpus = corpus_from_lines(lines);
  const auto props = per_text_unigram_proportions(corpus, 0);
  REQUIRE(props.size() == 3);
  CHECK(props[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(props[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(props[2] == 0.0);
}

TEST_CASE("format_double round-trips and stays short") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  const double value = 0.8031528501359657;
  CHECK(std::strtod(format_double(value).c_str(), nullptr) == value);
}
