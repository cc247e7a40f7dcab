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

#include "model_io.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "errors.hpp"
#include "text.hpp"

namespace tokeval {

namespace {

std::string escape_entry(std::string_view entry) {
  std::string out;
  out.reserve(entry.size());
  for (char c : entry) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string unescape_entry(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\') {
      out += text[i];
      continue;
    }
    if (i + 1 >= text.size()) {
      throw IoError("dangling escape in model entry");
    }
    switch (text[++i]) {
      case '\\':
        out += '\\';
        break;
      case 't':
        out += '\t';
        break;
      case 'n':
        out += '\n';
        break;
      default:
        throw IoError("unknown escape in model entry");
    }
  }
  return out;
}

// "key=value" field in a model header.
std::optional<std::string_view> find_header_field(std::string_view line,
                                                  std::string_view key) {
  std::string needle = " " + std::string(key) + "=";
  auto at = line.find(needle);
  if (at == std::string_view::npos) return std::nullopt;
  auto start = at + needle.size();
  auto end = line.find(' ', start);
  if (end == std::string_view::npos) end = line.size();
  return line.substr(start, end - start);
}

std::string_view header_field(std::string_view line, std::string_view key) {
  auto field = find_header_field(line, key);
  if (!field) {
    throw IoError("model header is missing '" + std::string(key) + "'");
  }
  return *field;
}

std::size_t parse_size(std::string_view text) {
  char* end = nullptr;
  std::string buf(text);
  auto v = std::strtoull(buf.c_str(), &end, 10);
  if (end == buf.c_str() || *end != '\0') {
    throw IoError("bad integer in model header: " + buf);
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string serialize_model(const TokenizerModel& model) {
  std::ostringstream out;
  if (const auto* bpe = std::get_if<BpeModel>(&model)) {
    out << "bpe v1 vocab=" << bpe->vocab_target << " size=" << bpe->vocab_size
        << " tau=" << bpe->temperature.to_string() << " seed=" << bpe->seed
        << "\n";
    for (const auto& [left, right] : bpe->merges) {
      out << left << '\t' << right << '\n';
    }
  } else {
    const auto& lzw = std::get<LzwModel>(model);
    out << "lzw v1 vocab=" << lzw.vocab_target << "\n";
    for (const auto& entry : lzw.entries) {
      out << escape_entry(entry) << '\n';
    }
  }
  return out.str();
}

TokenizerModel parse_model(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) {
    throw IoError("empty model file");
  }
  std::string line;
  if (header.rfind("bpe v1 ", 0) == 0) {
    BpeModel bpe;
    bpe.vocab_target = parse_size(header_field(header, "vocab"));
    // Older or hand-written headers may lack the measured size.
    bpe.vocab_size = parse_size(find_header_field(header, "size").value_or("0"));
    bpe.temperature = Temperature::parse(header_field(header, "tau"));
    bpe.seed = parse_size(header_field(header, "seed"));
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw IoError("merge line without a tab: " + line);
      }
      bpe.merges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return bpe;
  }
  if (header.rfind("lzw v1 ", 0) == 0) {
    LzwModel lzw;
    lzw.vocab_target = parse_size(header_field(header, "vocab"));
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      lzw.entries.push_back(unescape_entry(line));
    }
    return lzw;
  }
  throw IoError("unrecognized model header: " + header);
}

void save_model(const TokenizerModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open file for writing: " + path);
  }
  out << serialize_model(model);
  if (!out) {
    throw IoError("write failure on file: " + path);
  }
}

TokenizerModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failure on file: " + path);
  }
  return parse_model(buf.str());
}

}  // namespace tokeval
