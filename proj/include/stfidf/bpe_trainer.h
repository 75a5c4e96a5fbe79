// Copyright 2026 The stfidf Authors
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

#ifndef STFIDF_BPE_TRAINER_H_
#define STFIDF_BPE_TRAINER_H_

#include <cstddef>
#include <string_view>
#include <vector>

#include "stfidf/bpe_model.h"

namespace stfidf {

// Smallest set of most frequent scalars whose share of all non-whitespace
// scalar occurrences reaches `coverage`. Frequency ties rank by ascending
// codepoint. The result is sorted and always contains the word-boundary
// marker and the unknown sentinel (which are not counted).
// Throws InvalidInputError when the corpus has no countable scalars and
// ConfigError when coverage is outside (0, 1].
std::vector<char32_t> SelectAlphabet(std::string_view corpus, double coverage);

struct BpeTrainerOptions {
  size_t vocab_size = 8000;
  double coverage = 0.9995;
};

// Byte-pair encoding over whitespace-delimited words of the NFKC-normalized
// corpus, each prefixed with the boundary marker. Repeatedly merges the most
// frequent adjacent pair (ties: smallest (left, right) in codepoint order)
// until the vocabulary reaches `vocab_size` or no pair occurs twice. Pairs
// touching the unknown sentinel, and pairs whose concatenation is already a
// piece, are never merged.
BpeModel TrainBpe(std::string_view corpus, const BpeTrainerOptions& options);

}  // namespace stfidf

#endif  // STFIDF_BPE_TRAINER_H_
