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

#ifndef STFIDF_TESTS_ORACLES_BPE_ORACLE_H_
#define STFIDF_TESTS_ORACLES_BPE_ORACLE_H_

// Brute-force BPE trainer. Works on UTF-8 strings and recounts every pair
// over every word occurrence at each step; nothing is shared with the
// incremental trainer in the library.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace stfidf::oracle {

inline const std::string kMarker = "\xE2\x96\x81";
inline const std::string kUnk = "\xEF\xBF\xBD";

struct OracleStep {
  std::string left;
  std::string right;
  int64_t count;
};

// Splits UTF-8 into single-scalar strings.
inline std::vector<std::string> Scalars(const std::string& s) {
  std::vector<std::string> out;
  for (size_t i = 0; i < s.size();) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    const size_t n = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    out.push_back(s.substr(i, n));
    i += n;
  }
  return out;
}

using PairCounts = std::map<std::pair<std::string, std::string>, int64_t>;

// Counts of adjacent pairs that may still merge.
inline PairCounts CountPairs(const std::vector<std::vector<std::string>>& words,
                             const std::set<std::string>& pieces) {
  PairCounts counts;
  for (const auto& w : words) {
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == kUnk || w[i + 1] == kUnk) continue;
      if (pieces.count(w[i] + w[i + 1])) continue;
      ++counts[{w[i], w[i + 1]}];
    }
  }
  return counts;
}

inline void ApplyMerge(std::vector<std::vector<std::string>>* words,
                       const std::string& left, const std::string& right) {
  for (auto& w : *words) {
    std::vector<std::string> merged;
    for (size_t i = 0; i < w.size(); ++i) {
      if (i + 1 < w.size() && w[i] == left && w[i + 1] == right) {
        merged.push_back(left + right);
        ++i;
      } else {
        merged.push_back(w[i]);
      }
    }
    w = std::move(merged);
  }
}

// Words are given as whitespace-free UTF-8 tokens, one entry per occurrence.
// `alphabet` lists the covered scalars; anything else becomes UNK. The
// stopping rule mirrors the contract: stop at `vocab_size` pieces or when
// the best pair occurs fewer than two times.
inline std::vector<OracleStep> TrainBruteForce(
    const std::vector<std::string>& word_occurrences,
    const std::set<std::string>& alphabet, size_t vocab_size) {
  std::set<std::string> pieces = alphabet;
  pieces.insert(kMarker);
  pieces.insert(kUnk);
  std::vector<std::vector<std::string>> words;
  for (const std::string& w : word_occurrences) {
    std::vector<std::string> seq{kMarker};
    for (const std::string& c : Scalars(w)) {
      seq.push_back(alphabet.count(c) ? c : kUnk);
    }
    words.push_back(std::move(seq));
  }

  std::vector<OracleStep> steps;
  while (pieces.size() < vocab_size) {
    const PairCounts counts = CountPairs(words, pieces);
    const std::pair<std::string, std::string>* best = nullptr;
    int64_t best_count = 0;
    // std::map iterates pairs in ascending byte order, which for UTF-8 is
    // ascending codepoint order, so the first maximum wins ties.
    for (const auto& [pair, count] : counts) {
      if (count > best_count) {
        best = &pair;
        best_count = count;
      }
    }
    if (best == nullptr || best_count < 2) break;
    steps.push_back({best->first, best->second, best_count});
    pieces.insert(best->first + best->second);
    ApplyMerge(&words, best->first, best->second);
  }
  return steps;
}

}  // namespace stfidf::oracle

#endif  // STFIDF_TESTS_ORACLES_BPE_ORACLE_H_
