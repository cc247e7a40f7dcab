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

#ifndef TOKEVAL_MODEL_IO_HPP_
#define TOKEVAL_MODEL_IO_HPP_

#include <string>
#include <variant>

#include "bpe.hpp"
#include "lzw.hpp"

namespace tokeval {

// Either tokenizer, as stored in a model file.
using TokenizerModel = std::variant<BpeModel, LzwModel>;

// Text formats:
//   bpe v1 vocab=<target> size=<measured> tau=<greedy|antigreedy|number> seed=<seed>
//   <left>\t<right>              one merge per line, training order
// where size is the trained segmentation's symbol count; a header
// without it parses with size zero.
// and
//   lzw v1 vocab=<target>
//   <entry>                      one entry per line, insertion order,
//                                with backslash, tab and newline escaped
std::string serialize_model(const TokenizerModel& model);
TokenizerModel parse_model(const std::string& text);

void save_model(const TokenizerModel& model, const std::string& path);
// Dispatches on the header's first word.
TokenizerModel load_model(const std::string& path);

}  // namespace tokeval

#endif  // TOKEVAL_MODEL_IO_HPP_
