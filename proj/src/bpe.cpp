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

#include "bpe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <tuple>
#include <unordered_set>

#include "errors.hpp"
#include "text.hpp"

namespace tokeval {

Temperature Temperature::of(double v) {
  if (v == 0.0 || !std::isfinite(v)) {
    throw UsageError("temperature must be a nonzero finite number");
  }
  return {Mode::kValue, v};
}

Temperature Temperature::parse(std::string_view text) {
  if (text == "greedy") return greedy();
  if (text == "antigreedy") return antigreedy();
  char* end = nullptr;
  std::string buf(text);
  double v = std::strtod(buf.c_str(), &end);
  if (end == buf.c_str() || *end != '\0') {
    throw UsageError("temperature must be 'greedy', 'antigreedy' or a number");
  }
  return of(v);
}

std::string Temperature::to_string() const {
  switch (mode) {
    case Mode::kGreedy:
      return "greedy";
    case Mode::kAntigreedy:
      return "antigreedy";
    case Mode::kValue:
      return format_double(value);
  }
  return "greedy";
}

void check_markers(std::string_view text) {
  if (text.find(kEndOfWord) != std::string_view::npos ||
      text.find(kContinuation) != std::string_view::npos) {
    throw UsageError("input contains a reserved marker ('" +
                     std::string(kEndOfWord) + "' or '" +
                     std::string(kContinuation) + "')");
  }
}

namespace {

using SymId = std::uint32_t;

constexpr SymId kEowId = 0;  // interned first in every symbol table

struct SymbolTable {
  std::vector<std::string> surfaces;
  std::unordered_map<std::string, SymId> ids;

  SymbolTable() { intern(kEndOfWord); }

  SymId intern(std::string_view surface) {
    auto it = ids.find(std::string(surface));
    if (it != ids.end()) return it->second;
    SymId id = static_cast<SymId>(surfaces.size());
    surfaces.emplace_back(surface);
    ids.emplace(surfaces.back(), id);
    return id;
  }
};

struct Word {
  std::vector<SymId> syms;
  std::int64_t freq = 0;
};

// Replaces adjacent (left, right) with merged, leftmost occurrence first,
// non-overlapping. Returns true if anything changed.
bool merge_in_word(std::vector<SymId>& syms, SymId left, SymId right,
                   SymId merged) {
  bool changed = false;
  std::size_t w = 0;
  for (std::size_t r = 0; r < syms.size();) {
    if (r + 1 < syms.size() && syms[r] == left && syms[r + 1] == right) {
      syms[w++] = merged;
      r += 2;
      changed = true;
    } else {
      syms[w++] = syms[r++];
    }
  }
  syms.resize(w);
  return changed;
}

std::vector<SymId> word_to_symbols(std::string_view word, SymbolTable& table) {
  std::vector<SymId> syms;
  for (auto ch : utf8_split(word)) {
    syms.push_back(table.intern(ch));
  }
  syms.push_back(kEowId);
  return syms;
}

// Distinct non-marker symbols across all words.
std::size_t distinct_symbols(const std::vector<Word>& words) {
  std::unordered_set<SymId> seen;
  for (const auto& word : words) {
    for (SymId s : word.syms) {
      if (s != kEowId) seen.insert(s);
    }
  }
  return seen.size();
}

// Uniform draw in [0, 1) built from the top 53 bits, identical on every
// platform for a given generator state.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

BpeModel train_bpe(std::span<const std::string> lines, std::size_t vocab_target,
                   Temperature temperature, std::uint64_t seed) {
  SymbolTable table;
  std::vector<Word> words;
  std::unordered_map<std::string, std::size_t> word_index;
  for (const auto& line : lines) {
    check_markers(line);
    for (auto piece : split_whitespace(line)) {
      auto key = std::string(piece);
      auto it = word_index.find(key);
      if (it == word_index.end()) {
        word_index.emplace(std::move(key), words.size());
        words.push_back({word_to_symbols(piece, table), 1});
      } else {
        ++words[it->second].freq;
      }
    }
  }
  if (words.empty()) {
    throw DomainError("no words in training input");
  }
  if (vocab_target < distinct_symbols(words)) {
    throw UsageError("vocabulary target is below the character count");
  }

  BpeModel model;
  model.vocab_target = vocab_target;
  model.temperature = temperature;
  model.seed = seed;
  std::mt19937_64 rng(seed);

  using Pair = std::pair<SymId, SymId>;
  while (distinct_symbols(words) < vocab_target) {
    // Count adjacent pairs; the marker never joins a pair.
    std::map<Pair, std::int64_t> counts;
    for (const auto& word : words) {
      for (std::size_t i = 0; i + 1 < word.syms.size(); ++i) {
        if (word.syms[i] == kEowId || word.syms[i + 1] == kEowId) continue;
        counts[{word.syms[i], word.syms[i + 1]}] += word.freq;
      }
    }
    // Candidates must repeat; surface order makes every mode reproducible.
    struct Candidate {
      std::string left;
      std::string right;
      Pair pair;
      std::int64_t count;
    };
    std::vector<Candidate> candidates;
    for (const auto& [pair, count] : counts) {
      if (count < 2) continue;
      candidates.push_back({table.surfaces[pair.first],
                            table.surfaces[pair.second], pair, count});
    }
    if (candidates.empty()) {
      break;
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return std::tie(a.left, a.right) < std::tie(b.left, b.right);
              });

    std::size_t chosen = 0;
    switch (temperature.mode) {
      case Temperature::Mode::kGreedy: {
        for (std::size_t i = 1; i < candidates.size(); ++i) {
          if (candidates[i].count > candidates[chosen].count) chosen = i;
        }
        break;
      }
      case Temperature::Mode::kAntigreedy: {
        for (std::size_t i = 1; i < candidates.size(); ++i) {
          if (candidates[i].count < candidates[chosen].count) chosen = i;
        }
        break;
      }
      case Temperature::Mode::kValue: {
        std::int64_t max_count = 0;
        for (const auto& c : candidates) max_count = std::max(max_count, c.count);
        const double scale =
            1.0 / (temperature.value * static_cast<double>(max_count));
        double top = -std::numeric_limits<double>::infinity();
        for (const auto& c : candidates) {
          top = std::max(top, static_cast<double>(c.count) * scale);
        }
        std::vector<double> weights;
        weights.reserve(candidates.size());
        double total = 0.0;
        for (const auto& c : candidates) {
          double w = std::exp(static_cast<double>(c.count) * scale - top);
          total += w;
          weights.push_back(w);
        }
        const double u = unit_uniform(rng) * total;
        double cum = 0.0;
        chosen = candidates.size() - 1;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
          cum += weights[i];
          if (u < cum) {
            chosen = i;
            break;
          }
        }
        break;
      }
    }

    const auto& pick = candidates[chosen];
    SymId merged = table.intern(pick.left + pick.right);
    for (auto& word : words) {
      merge_in_word(word.syms, pick.pair.first, pick.pair.second, merged);
    }
    model.merges.emplace_back(pick.left, pick.right);
  }

  model.vocab_size = distinct_symbols(words);
  return model;
}

BpeApplier::BpeApplier(const BpeModel& model) {
  intern(kEndOfWord);  // id 0
  for (const auto& [left, right] : model.merges) {
    Merge m;
    m.left = intern(left);
    m.right = intern(right);
    m.merged = intern(left + right);
    merges_.push_back(m);
  }
}

std::uint32_t BpeApplier::intern(std::string_view surface) {
  auto it = symbol_ids_.find(std::string(surface));
  if (it != symbol_ids_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(symbols_.size());
  symbols_.emplace_back(surface);
  symbol_ids_.emplace(symbols_.back(), id);
  return id;
}

const std::vector<std::string>& BpeApplier::word_pieces(std::string_view word) {
  auto key = std::string(word);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  std::vector<SymId> syms;
  for (auto ch : utf8_split(word)) {
    syms.push_back(intern(ch));
  }
  syms.push_back(kEowId);
  for (const auto& merge : merges_) {
    merge_in_word(syms, merge.left, merge.right, merge.merged);
  }

  std::vector<std::string> pieces;
  bool first = true;
  for (SymId s : syms) {
    if (s == kEowId) continue;
    if (first) {
      pieces.push_back(symbols_[s]);
      first = false;
    } else {
      pieces.push_back(std::string(kContinuation) + symbols_[s]);
    }
  }
  return cache_.emplace(std::move(key), std::move(pieces)).first->second;
}

std::vector<std::string> BpeApplier::apply_text(std::string_view text) {
  check_markers(text);
  std::vector<std::string> tokens;
  for (auto word : split_whitespace(text)) {
    const auto& pieces = word_pieces(word);
    tokens.insert(tokens.end(), pieces.begin(), pieces.end());
  }
  return tokens;
}

std::vector<std::string> apply_bpe(const BpeModel& model, std::string_view text) {
  BpeApplier applier(model);
  return applier.apply_text(text);
}

std::string detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& token : tokens) {
    std::string_view piece = token;
    const bool continues = piece.substr(0, kContinuation.size()) == kContinuation;
    if (continues) {
      piece.remove_prefix(kContinuation.size());
    } else if (!out.empty()) {
      out += ' ';
    }
    out += piece;
  }
  return out;
}

}  // namespace tokeval
