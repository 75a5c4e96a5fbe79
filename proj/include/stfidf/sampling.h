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

#ifndef STFIDF_SAMPLING_H_
#define STFIDF_SAMPLING_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stfidf {

// Size of one language's monolingual corpus, measured in bytes.
struct LanguageStats {
  std::string language_id;
  uint64_t corpus_size = 0;
};

// Per-language sampling probabilities after temperature rescaling, in the
// order the languages were given.
struct SamplingWeights {
  double temperature = 1.0;
  std::vector<std::string> languages;
  std::vector<double> probabilities;
};

// p_l = D_l / sum_i D_i, then q_l proportional to p_l^(1/T), renormalized.
// T == 1 returns p_l unchanged. Throws InvalidInputError for empty stats,
// duplicate ids or D_l == 0, and ConfigError for T < 1.
SamplingWeights ComputeSamplingWeights(std::span<const LanguageStats> stats,
                                       double temperature);

struct LanguageCorpus {
  std::string language_id;
  std::vector<std::string> lines;
};

// Byte size of the corpus text (line contents, newlines excluded).
LanguageStats MeasureCorpus(const LanguageCorpus& corpus);

// Reads one corpus per (language, path); blank lines are skipped. Throws
// IoError naming the language when a source cannot be read.
std::vector<LanguageCorpus> ReadLanguageCorpora(
    const std::vector<std::pair<std::string, std::filesystem::path>>& sources);

// Draws `budget` lines with replacement: a language by `weights`, then a
// uniformly chosen line of that language. Deterministic for a given seed on
// every platform (mt19937_64 with explicit uniform mapping).
std::vector<std::string> SampleTrainingCorpus(
    std::span<const LanguageCorpus> corpora, const SamplingWeights& weights,
    size_t budget, uint64_t seed);

}  // namespace stfidf

#endif  // STFIDF_SAMPLING_H_
