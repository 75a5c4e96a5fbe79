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

#include "stfidf/bpe_trainer.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "stfidf/errors.h"
#include "stfidf/unicode.h"

namespace stfidf {
namespace {

using PairKey = uint64_t;

PairKey MakeKey(int32_t left, int32_t right) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(left)) << 32) |
         static_cast<uint32_t>(right);
}
int32_t KeyLeft(PairKey key) { return static_cast<int32_t>(key >> 32); }
int32_t KeyRight(PairKey key) { return static_cast<int32_t>(key & 0xFFFFFFFFu); }

std::vector<char32_t> SelectAlphabetWide(std::u32string_view text,
                                         double coverage) {
  if (!(coverage > 0.0 && coverage <= 1.0)) {
    throw ConfigError("coverage must be in (0, 1], got " +
                      std::to_string(coverage));
  }
  std::unordered_map<char32_t, uint64_t> counts;
  uint64_t total = 0;
  for (char32_t c : text) {
    if (unicode::IsWhitespace(c) || c == unicode::kWordBoundary ||
        c == unicode::kUnknown) {
      continue;
    }
    ++counts[c];
    ++total;
  }
  if (total == 0) throw InvalidInputError("corpus contains no characters");

  std::vector<std::pair<char32_t, uint64_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<char32_t> alphabet = {unicode::kWordBoundary, unicode::kUnknown};
  uint64_t accumulated = 0;
  for (const auto& [c, count] : ranked) {
    alphabet.push_back(c);
    accumulated += count;
    if (static_cast<double>(accumulated) / static_cast<double>(total) >=
        coverage) {
      break;
    }
  }
  std::sort(alphabet.begin(), alphabet.end());
  return alphabet;
}

struct Word {
  std::vector<int32_t> symbols;
  int64_t freq = 0;
};

class Trainer {
 public:
  Trainer(std::vector<Word> words, const std::vector<char32_t>& alphabet)
      : words_(std::move(words)), heap_(HeapLess{this}) {
    for (char32_t c : alphabet) {
      pieces_.push_back(std::u32string(1, c));
      piece_set_.insert(pieces_.back());
    }
    unknown_id_ = static_cast<int32_t>(
        std::lower_bound(alphabet.begin(), alphabet.end(), unicode::kUnknown) -
        alphabet.begin());
  }

  std::vector<Merge> Run(size_t vocab_size) {
    for (size_t w = 0; w < words_.size(); ++w) {
      const Word& word = words_[w];
      for (size_t i = 0; i + 1 < word.symbols.size(); ++i) {
        if (!Mergeable(word.symbols[i], word.symbols[i + 1])) continue;
        const PairKey key = MakeKey(word.symbols[i], word.symbols[i + 1]);
        counts_[key] += word.freq;
        where_[key].push_back(static_cast<int32_t>(w));
      }
    }
    for (const auto& [key, count] : counts_) heap_.push({count, key});

    std::vector<Merge> merges;
    std::vector<uint32_t> visited(words_.size(), 0);
    while (pieces_.size() < vocab_size && !heap_.empty()) {
      const Candidate top = heap_.top();
      heap_.pop();
      auto count_it = counts_.find(top.key);
      if (count_it == counts_.end() || count_it->second != top.count) continue;
      if (top.count < 2) break;
      if (banned_.contains(top.key)) continue;
      const int32_t left = KeyLeft(top.key);
      const int32_t right = KeyRight(top.key);
      std::u32string merged = pieces_[left] + pieces_[right];
      if (piece_set_.contains(merged)) {
        banned_.insert(top.key);
        continue;
      }
      const int32_t merged_id = static_cast<int32_t>(pieces_.size());
      pieces_.push_back(merged);
      piece_set_.insert(std::move(merged));
      merges.push_back({unicode::Encode(pieces_[left]),
                        unicode::Encode(pieces_[right])});
      ApplyMerge(top.key, merged_id, static_cast<uint32_t>(merges.size()),
                 &visited);
    }
    return merges;
  }

 private:
  struct Candidate {
    int64_t count;
    PairKey key;
  };

  // Max-heap on count; among equal counts the smallest (left, right) pair
  // must surface first.
  struct HeapLess {
    const Trainer* trainer;
    bool operator()(const Candidate& a, const Candidate& b) const {
      if (a.count != b.count) return a.count < b.count;
      const auto& p = trainer->pieces_;
      const int cmp_left = p[KeyLeft(a.key)].compare(p[KeyLeft(b.key)]);
      if (cmp_left != 0) return cmp_left > 0;
      return p[KeyRight(a.key)].compare(p[KeyRight(b.key)]) > 0;
    }
  };

  bool Mergeable(int32_t left, int32_t right) const {
    return left != unknown_id_ && right != unknown_id_;
  }

  void ApplyMerge(PairKey key, int32_t merged_id, uint32_t stamp,
                  std::vector<uint32_t>* visited) {
    const int32_t left = KeyLeft(key);
    const int32_t right = KeyRight(key);
    std::map<PairKey, int64_t> delta;
    std::vector<int32_t> next;
    std::vector<int32_t> affected = std::move(where_[key]);
    where_.erase(key);
    for (int32_t w : affected) {
      if ((*visited)[w] == stamp) continue;
      (*visited)[w] = stamp;
      Word& word = words_[w];
      next.clear();
      bool changed = false;
      for (size_t i = 0; i < word.symbols.size();) {
        if (i + 1 < word.symbols.size() && word.symbols[i] == left &&
            word.symbols[i + 1] == right) {
          next.push_back(merged_id);
          i += 2;
          changed = true;
        } else {
          next.push_back(word.symbols[i]);
          ++i;
        }
      }
      if (!changed) continue;
      for (size_t i = 0; i + 1 < word.symbols.size(); ++i) {
        if (Mergeable(word.symbols[i], word.symbols[i + 1])) {
          delta[MakeKey(word.symbols[i], word.symbols[i + 1])] -= word.freq;
        }
      }
      for (size_t i = 0; i + 1 < next.size(); ++i) {
        if (!Mergeable(next[i], next[i + 1])) continue;
        const PairKey k = MakeKey(next[i], next[i + 1]);
        delta[k] += word.freq;
        if (next[i] == merged_id || next[i + 1] == merged_id) {
          where_[k].push_back(w);
        }
      }
      word.symbols.swap(next);
    }
    for (const auto& [k, d] : delta) {
      if (d == 0) continue;
      int64_t& count = counts_[k];
      count += d;
      if (count <= 0) {
        counts_.erase(k);
      } else {
        heap_.push({count, k});
      }
    }
  }

  std::vector<Word> words_;
  std::vector<std::u32string> pieces_;
  std::unordered_set<std::u32string> piece_set_;
  int32_t unknown_id_ = -1;
  std::unordered_map<PairKey, int64_t> counts_;
  std::unordered_map<PairKey, std::vector<int32_t>> where_;
  std::unordered_set<PairKey> banned_;
  std::priority_queue<Candidate, std::vector<Candidate>, HeapLess> heap_;
};

}  // namespace

std::vector<char32_t> SelectAlphabet(std::string_view corpus, double coverage) {
  return SelectAlphabetWide(unicode::Decode(corpus), coverage);
}

BpeModel TrainBpe(std::string_view corpus, const BpeTrainerOptions& options) {
  const std::u32string text =
      unicode::Decode(unicode::NormalizeNfkc(corpus));
  const std::vector<char32_t> alphabet =
      SelectAlphabetWide(text, options.coverage);
  if (options.vocab_size <= alphabet.size()) {
    throw ConfigError("vocab_size " + std::to_string(options.vocab_size) +
                      " must exceed the alphabet size " +
                      std::to_string(alphabet.size()));
  }

  std::map<std::u32string, int64_t> word_counts;
  for (std::u32string& word : unicode::SplitOnWhitespace(text)) {
    ++word_counts[std::move(word)];
  }
  auto id_of = [&alphabet](char32_t c) -> int32_t {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), c);
    if (it == alphabet.end() || *it != c) {
      it = std::lower_bound(alphabet.begin(), alphabet.end(), unicode::kUnknown);
    }
    return static_cast<int32_t>(it - alphabet.begin());
  };
  std::vector<Word> words;
  words.reserve(word_counts.size());
  for (const auto& [text_word, freq] : word_counts) {
    Word word;
    word.freq = freq;
    word.symbols.reserve(text_word.size() + 1);
    word.symbols.push_back(id_of(unicode::kWordBoundary));
    for (char32_t c : text_word) word.symbols.push_back(id_of(c));
    words.push_back(std::move(word));
  }

  std::vector<Merge> merges = Trainer(std::move(words), alphabet).Run(options.vocab_size);
  return BpeModel::FromMerges(alphabet, std::move(merges), options.coverage);
}

}  // namespace stfidf
