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

#include "stfidf/sampling.h"

#include <cmath>
#include <fstream>
#include <random>
#include <unordered_set>

#include "stfidf/errors.h"

namespace stfidf {
namespace {

// Uniform double in [0, 1) from the top 53 bits.
double UnitInterval(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

SamplingWeights ComputeSamplingWeights(std::span<const LanguageStats> stats,
                                       double temperature) {
  if (stats.empty()) throw InvalidInputError("no language statistics given");
  if (!(temperature >= 1.0) || !std::isfinite(temperature)) {
    throw ConfigError("temperature must be >= 1, got " +
                      std::to_string(temperature));
  }
  std::unordered_set<std::string> seen;
  uint64_t total = 0;
  for (const LanguageStats& s : stats) {
    if (s.corpus_size == 0) {
      throw InvalidInputError("language '" + s.language_id +
                              "' has an empty corpus");
    }
    if (!seen.insert(s.language_id).second) {
      throw InvalidInputError("duplicate language '" + s.language_id + "'");
    }
    total += s.corpus_size;
  }

  SamplingWeights weights;
  weights.temperature = temperature;
  for (const LanguageStats& s : stats) weights.languages.push_back(s.language_id);

  if (temperature == 1.0) {
    for (const LanguageStats& s : stats) {
      weights.probabilities.push_back(static_cast<double>(s.corpus_size) /
                                      static_cast<double>(total));
    }
    return weights;
  }

  const long double exponent = 1.0L / static_cast<long double>(temperature);
  std::vector<long double> tempered;
  long double norm = 0.0L;
  for (const LanguageStats& s : stats) {
    const long double p = static_cast<long double>(s.corpus_size) /
                          static_cast<long double>(total);
    tempered.push_back(std::pow(p, exponent));
    norm += tempered.back();
  }
  for (long double q : tempered) {
    weights.probabilities.push_back(static_cast<double>(q / norm));
  }
  return weights;
}

LanguageStats MeasureCorpus(const LanguageCorpus& corpus) {
  LanguageStats stats{corpus.language_id, 0};
  for (const std::string& line : corpus.lines) stats.corpus_size += line.size();
  return stats;
}

std::vector<LanguageCorpus> ReadLanguageCorpora(
    const std::vector<std::pair<std::string, std::filesystem::path>>& sources) {
  std::vector<LanguageCorpus> corpora;
  for (const auto& [language, path] : sources) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw IoError("cannot read corpus for language '" + language + "': " +
                    path.string());
    }
    LanguageCorpus corpus{language, {}};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) corpus.lines.push_back(std::move(line));
    }
    if (in.bad()) {
      throw IoError("failed reading corpus for language '" + language + "'");
    }
    corpora.push_back(std::move(corpus));
  }
  return corpora;
}

std::vector<std::string> SampleTrainingCorpus(
    std::span<const LanguageCorpus> corpora, const SamplingWeights& weights,
    size_t budget, uint64_t seed) {
  if (budget == 0) throw InvalidInputError("sampling budget must be positive");
  if (weights.languages.size() != weights.probabilities.size() ||
      weights.languages.empty()) {
    throw InvalidInputError("malformed sampling weights");
  }
  std::vector<const LanguageCorpus*> sources;
  std::vector<double> cumulative;
  double running = 0.0;
  for (size_t i = 0; i < weights.languages.size(); ++i) {
    const LanguageCorpus* found = nullptr;
    for (const LanguageCorpus& c : corpora) {
      if (c.language_id == weights.languages[i]) found = &c;
    }
    if (found == nullptr) {
      throw IoError("no corpus for language '" + weights.languages[i] + "'");
    }
    if (found->lines.empty()) {
      throw InvalidInputError("corpus for language '" + weights.languages[i] +
                              "' has no lines");
    }
    sources.push_back(found);
    running += weights.probabilities[i];
    cumulative.push_back(running);
  }

  std::mt19937_64 gen(seed);
  std::vector<std::string> lines;
  lines.reserve(budget);
  for (size_t n = 0; n < budget; ++n) {
    const double u = UnitInterval(gen) * running;
    size_t lang = 0;
    while (lang + 1 < cumulative.size() && u >= cumulative[lang]) ++lang;
    const auto& pool = sources[lang]->lines;
    size_t index = static_cast<size_t>(UnitInterval(gen) * pool.size());
    if (index >= pool.size()) index = pool.size() - 1;
    lines.push_back(pool[index]);
  }
  return lines;
}

}  // namespace stfidf
