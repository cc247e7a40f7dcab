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

// Drives the installed command-line binary end to end. The binary path
// arrives in the TOKEVAL_CLI environment variable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "helpers.hpp"

namespace {

std::string cli() {
  const char* path = std::getenv("TOKEVAL_CLI");
  REQUIRE_MESSAGE(path != nullptr, "TOKEVAL_CLI must point at the binary");
  return testutil::quoted(path);
}

}  // namespace

TEST_CASE("score prints the efficiency anchors exactly") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("one.tok"), "a a a b b c d\n");
  testutil::write_file(dir.file("two.tok"), "a a a b b b c c d d e\n");

  auto result = testutil::run_command(
      cli() + " score -i " + testutil::quoted(dir.file("one.tok")) +
      " -m renyi_efficiency -e power=3");
  CHECK(result.exit_code == 0);
  CHECK(result.output == "0.8031528501359657\n");

  result = testutil::run_command(
      cli() + " score -i " + testutil::quoted(dir.file("two.tok")) +
      " -m renyi_efficiency -e power=3");
  CHECK(result.exit_code == 0);
  CHECK(result.output == "0.9105681923824472\n");
}

TEST_CASE("score pools every input file") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("one.tok"), "a b\n");
  testutil::write_file(dir.file("two.tok"), "c d\n");
  const auto result = testutil::run_command(
      cli() + " score -i " + testutil::quoted(dir.file("one.tok")) + " " +
      testutil::quoted(dir.file("two.tok")) + " -m shannon_efficiency");
  CHECK(result.exit_code == 0);
  CHECK(result.output == "1\n");
}

TEST_CASE("score failure modes map to exit codes") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("one.tok"), "a b\n");

  auto result = testutil::run_command(
      cli() + " score -i " + testutil::quoted(dir.file("absent.tok")) +
      " 2>&1");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("tokeval:") != std::string::npos);
  CHECK(result.output.find("absent.tok") != std::string::npos);

  result = testutil::run_command(
      cli() + " score -i " + testutil::quoted(dir.file("one.tok")) +
      " -m sharpe_ratio 2>&1");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("sharpe_ratio") != std::string::npos);
  CHECK(result.output.find("renyi_efficiency") != std::string::npos);

  result = testutil::run_command(
      cli() + " score -i " + testutil::quoted(dir.file("one.tok")) +
      " -e power 2>&1");
  CHECK(result.exit_code == 2);

  result = testutil::run_command(cli() + " score --no-such-flag 2>&1");
  CHECK(result.exit_code == 2);

  result = testutil::run_command(cli() + " --help");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("score") != std::string::npos);
}

TEST_CASE("verify-bounds splits clean and violated corpora by exit code") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("clean.tok"), "a a b c\nb c a a\n");
  auto result = testutil::run_command(
      cli() + " verify-bounds -i " + testutil::quoted(dir.file("clean.tok")) +
      " --alpha 2");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("all_pass\t1") != std::string::npos);
  CHECK(result.output.find("lemma_residual\t") != std::string::npos);

  std::string skew;
  for (int i = 0; i < 18; ++i) skew += "x\n";
  skew += "y\nz\n";
  testutil::write_file(dir.file("skew.tok"), skew);
  result = testutil::run_command(
      cli() + " verify-bounds -i " + testutil::quoted(dir.file("skew.tok")) +
      " --alpha 2 2>&1");
  CHECK(result.exit_code == 3);
  CHECK(result.output.find("pass_shannon_upper_ceil\t0") != std::string::npos);
  CHECK(result.output.find("pass_shannon_upper\t1") != std::string::npos);
  CHECK(result.output.find("bound violated") != std::string::npos);

  result = testutil::run_command(
      cli() + " verify-bounds -i " + testutil::quoted(dir.file("clean.tok")) +
      " --base 2.5 2>&1");
  CHECK(result.exit_code == 2);
}

TEST_CASE("training is deterministic and applying round trips") {
  testutil::TempDir dir;
  const std::string raw = "the cat sat on the mat\nthe bat and the rat\n";
  testutil::write_file(dir.file("raw.txt"), raw);

  const auto train = [&](const std::string& model_name) {
    return testutil::run_command(
        cli() + " train-bpe --input " + testutil::quoted(dir.file("raw.txt")) +
        " --vocab-size 14 --temperature 0.7 --seed 9 --model-out " +
        testutil::quoted(dir.file(model_name)));
  };
  auto result = train("a.model");
  CHECK(result.exit_code == 0);
  result = train("b.model");
  CHECK(result.exit_code == 0);
  CHECK(testutil::read_file(dir.file("a.model")) ==
        testutil::read_file(dir.file("b.model")));

  result = testutil::run_command(
      cli() + " apply --model " + testutil::quoted(dir.file("a.model")) +
      " --input " + testutil::quoted(dir.file("raw.txt")) + " --output " +
      testutil::quoted(dir.file("raw.tok")));
  CHECK(result.exit_code == 0);

  result = testutil::run_command(
      cli() + " apply --detokenize --input " +
      testutil::quoted(dir.file("raw.tok")) + " --output " +
      testutil::quoted(dir.file("raw.rt")));
  CHECK(result.exit_code == 0);
  CHECK(testutil::read_file(dir.file("raw.rt")) == raw);

  // Tokenized output marks continuations and nothing else.
  const auto tokenized = testutil::read_file(dir.file("raw.tok"));
  CHECK(tokenized.find("@@") != std::string::npos);
  CHECK(tokenized.find("</w>") == std::string::npos);
}

TEST_CASE("lzw models flow through the same commands") {
  testutil::TempDir dir;
  const std::string raw = "mississippi river\nmississippi mud\n";
  testutil::write_file(dir.file("raw.txt"), raw);

  auto result = testutil::run_command(
      cli() + " train-lzw --input " + testutil::quoted(dir.file("raw.txt")) +
      " --vocab-size 24 --model-out " +
      testutil::quoted(dir.file("lzw.model")));
  CHECK(result.exit_code == 0);
  CHECK(result.output == "24\n");

  result = testutil::run_command(
      cli() + " apply --model " + testutil::quoted(dir.file("lzw.model")) +
      " --input " + testutil::quoted(dir.file("raw.txt")) + " --output " +
      testutil::quoted(dir.file("raw.tok")));
  CHECK(result.exit_code == 0);

  result = testutil::run_command(
      cli() + " apply --detokenize --input " +
      testutil::quoted(dir.file("raw.tok")) + " --output " +
      testutil::quoted(dir.file("raw.rt")));
  CHECK(result.exit_code == 0);
  CHECK(testutil::read_file(dir.file("raw.rt")) == raw);

  // A character the dictionary never saw: coverage failure, exit 1.
  testutil::write_file(dir.file("novel.txt"), "mississippi\nzzz\n");
  result = testutil::run_command(
      cli() + " apply --model " + testutil::quoted(dir.file("lzw.model")) +
      " --input " + testutil::quoted(dir.file("novel.txt")) + " --output " +
      testutil::quoted(dir.file("novel.tok")) + " 2>&1");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("line 2") != std::string::npos);

  result = testutil::run_command(
      cli() + " apply --input x --output y 2>&1");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("--model") != std::string::npos);
}

TEST_CASE("correlate prints one statistic per line") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("table.tsv"),
                       "run\tgroup\teff\tperformance\n"
                       "r1\ta\t1\t1\n"
                       "r2\ta\t2\t3\n"
                       "r3\ta\t3\t2\n"
                       "r4\ta\t4\t5\n");
  auto result = testutil::run_command(
      cli() + " correlate --table " + testutil::quoted(dir.file("table.tsv")) +
      " --predictor eff");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("n\t4\n") != std::string::npos);
  CHECK(result.output.find("pearson_r\t0.83152184062") != std::string::npos);
  CHECK(result.output.find("pearson_p\t0.16847815937") != std::string::npos);
  // The rank statistics land within an ulp of 0.8 and 0.2; compare the
  // printed values numerically instead of pinning one decimal rendering.
  const auto printed = [&](const std::string& name) {
    const auto pos = result.output.find(name + "\t");
    REQUIRE(pos != std::string::npos);
    return std::strtod(result.output.c_str() + pos + name.size() + 1, nullptr);
  };
  CHECK(printed("spearman_rho") == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(printed("spearman_p") == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(result.output.find("pearson_r2\t") != std::string::npos);
  CHECK(result.output.find("spearman_rho2\t") != std::string::npos);

  result = testutil::run_command(
      cli() + " correlate --table " + testutil::quoted(dir.file("table.tsv")) +
      " --predictor size 2>&1");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("size") != std::string::npos);
}

TEST_CASE("grid search recovers a planted order through the pipeline") {
  testutil::TempDir dir;
  // Diverse Zipf corpora; performance comes from the score command so the
  // whole loop runs through the public binary.
  std::string table = "run\tgroup\tcorpus\tperformance\n";
  for (int i = 0; i < 6; ++i) {
    const int v = 25 + 15 * i;
    const double exponent = 0.3 + 0.22 * i;
    std::string line;
    for (int k = 0; k < v; ++k) {
      const auto count = std::max<long>(
          1, std::lround(300.0 * std::pow(k + 1.0, -exponent)));
      for (long c = 0; c < count; ++c) {
        if (!line.empty()) line += ' ';
        line += "w" + std::to_string(k);
      }
    }
    const auto name = "c" + std::to_string(i) + ".tok";
    testutil::write_file(dir.file(name), line + "\n");
    auto score = testutil::run_command(
        cli() + " score -i " + testutil::quoted(dir.file(name)) +
        " -m renyi_efficiency -e power=2.5");
    REQUIRE(score.exit_code == 0);
    REQUIRE(!score.output.empty());
    score.output.pop_back();  // trailing newline
    table += "r" + std::to_string(i) + "\tg\t" + name + "\t" + score.output +
             "\n";
  }
  testutil::write_file(dir.file("table.tsv"), table);

  // TSV to a file: the summary lands on stdout.
  auto result = testutil::run_command(
      cli() + " grid-search --table " + testutil::quoted(dir.file("table.tsv")) +
      " --grid alpha --output " + testutil::quoted(dir.file("curve.tsv")));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("best_alpha\t2.5\n") != std::string::npos);
  CHECK(result.output.find("pearson_r\t") != std::string::npos);
  CHECK(result.output.find("n\t6\n") != std::string::npos);

  const auto curve = testutil::read_file(dir.file("curve.tsv"));
  CHECK(std::count(curve.begin(), curve.end(), '\n') == 53);
  CHECK(curve.find("alpha\tpearson_r\t") == 0);
  CHECK(curve.find("inf\t") != std::string::npos);
  CHECK(curve.find("nan") != std::string::npos);

  // Without --output the TSV owns stdout and the summary moves to stderr.
  result = testutil::run_command(
      cli() + " grid-search --table " + testutil::quoted(dir.file("table.tsv")) +
      " --grid alpha 2>/dev/null");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("alpha\tpearson_r\t") == 0);
  CHECK(result.output.find("best_alpha") == std::string::npos);

  result = testutil::run_command(
      cli() + " grid-search --table " + testutil::quoted(dir.file("table.tsv")) +
      " --grid percentile --output " +
      testutil::quoted(dir.file("matrix.tsv")));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("best_window\t") != std::string::npos);
  const auto matrix = testutil::read_file(dir.file("matrix.tsv"));
  CHECK(std::count(matrix.begin(), matrix.end(), '\n') == 5152);

  result = testutil::run_command(
      cli() + " grid-search --table " + testutil::quoted(dir.file("table.tsv")) +
      " --grid banana 2>&1");
  CHECK(result.exit_code == 2);
}
