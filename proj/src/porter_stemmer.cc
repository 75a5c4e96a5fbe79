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

#include "stfidf/porter_stemmer.h"

#include <algorithm>
#include <array>

namespace stfidf {
namespace {

// A rule replaces `suffix` with `replacement` when the stem left after
// removing the suffix has measure greater than `min_measure`.
struct Rule {
  std::string_view suffix;
  std::string_view replacement;
  int min_measure;
};

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {}

  std::string Run() && {
    Step1a();
    Step1b();
    Step1c();
    Step2();
    Step3();
    Step4();
    Step5a();
    Step5b();
    return std::move(b_);
  }

 private:
  bool IsConsonant(size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 || !IsConsonant(i - 1);
      default:
        return true;
    }
  }

  // m in [C](VC)^m[V], over b_[0, len).
  int Measure(size_t len) const {
    int m = 0;
    size_t i = 0;
    while (i < len && IsConsonant(i)) ++i;
    while (i < len) {
      while (i < len && !IsConsonant(i)) ++i;
      if (i >= len) break;
      while (i < len && IsConsonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool HasVowel(size_t len) const {
    for (size_t i = 0; i < len; ++i) {
      if (!IsConsonant(i)) return true;
    }
    return false;
  }

  // *d: ends with a double consonant.
  bool EndsDoubleConsonant(size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && IsConsonant(len - 1);
  }

  // *o: ends cvc, where the second c is not w, x or y.
  bool EndsCvc(size_t len) const {
    if (len < 3) return false;
    if (!IsConsonant(len - 3) || IsConsonant(len - 2) ||
        !IsConsonant(len - 1)) {
      return false;
    }
    const char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool EndsWith(std::string_view suffix) const {
    return b_.size() >= suffix.size() &&
           std::string_view(b_).substr(b_.size() - suffix.size()) == suffix;
  }

  void Replace(size_t suffix_len, std::string_view replacement) {
    b_.resize(b_.size() - suffix_len);
    b_.append(replacement);
  }

  // The first rule whose suffix matches is the only candidate in its step.
  template <size_t N>
  void ApplyFirstMatch(const std::array<Rule, N>& rules) {
    for (const Rule& rule : rules) {
      if (!EndsWith(rule.suffix)) continue;
      if (Measure(b_.size() - rule.suffix.size()) > rule.min_measure) {
        Replace(rule.suffix.size(), rule.replacement);
      }
      return;
    }
  }

  void Step1a() {
    if (EndsWith("sses")) {
      Replace(4, "ss");
    } else if (EndsWith("ies")) {
      Replace(3, "i");
    } else if (EndsWith("ss")) {
      // unchanged
    } else if (EndsWith("s")) {
      Replace(1, "");
    }
  }

  void Step1b() {
    if (EndsWith("eed")) {
      if (Measure(b_.size() - 3) > 0) Replace(3, "ee");
      return;
    }
    size_t suffix_len = 0;
    if (EndsWith("ed") && HasVowel(b_.size() - 2)) {
      suffix_len = 2;
    } else if (EndsWith("ing") && HasVowel(b_.size() - 3)) {
      suffix_len = 3;
    } else {
      return;
    }
    Replace(suffix_len, "");

    if (EndsWith("at") || EndsWith("bl") || EndsWith("iz")) {
      b_.push_back('e');
    } else if (EndsDoubleConsonant(b_.size())) {
      const char last = b_.back();
      if (last != 'l' && last != 's' && last != 'z') b_.pop_back();
    } else if (Measure(b_.size()) == 1 && EndsCvc(b_.size())) {
      b_.push_back('e');
    }
  }

  void Step1c() {
    if (EndsWith("y") && HasVowel(b_.size() - 1)) b_.back() = 'i';
  }

  void Step2() {
    static constexpr std::array<Rule, 20> kRules = {{
        {"ational", "ate", 0}, {"tional", "tion", 0}, {"enci", "ence", 0},
        {"anci", "ance", 0},   {"izer", "ize", 0},    {"abli", "able", 0},
        {"alli", "al", 0},     {"entli", "ent", 0},   {"eli", "e", 0},
        {"ousli", "ous", 0},   {"ization", "ize", 0}, {"ation", "ate", 0},
        {"ator", "ate", 0},    {"alism", "al", 0},    {"iveness", "ive", 0},
        {"fulness", "ful", 0}, {"ousness", "ous", 0}, {"aliti", "al", 0},
        {"iviti", "ive", 0},   {"biliti", "ble", 0},
    }};
    ApplyFirstMatch(kRules);
  }

  void Step3() {
    static constexpr std::array<Rule, 7> kRules = {{
        {"icate", "ic", 0},
        {"ative", "", 0},
        {"alize", "al", 0},
        {"iciti", "ic", 0},
        {"ical", "ic", 0},
        {"ful", "", 0},
        {"ness", "", 0},
    }};
    ApplyFirstMatch(kRules);
  }

  void Step4() {
    static constexpr std::array<std::string_view, 19> kSuffixes = {
        "al",   "ance", "ence", "er",  "ic",  "able", "ible",
        "ant",  "ement", "ment", "ent", "ion", "ou",   "ism",
        "ate",  "iti",  "ous",  "ive", "ize",
    };
    for (std::string_view suffix : kSuffixes) {
      if (!EndsWith(suffix)) continue;
      const size_t stem_len = b_.size() - suffix.size();
      if (suffix == "ion" &&
          (stem_len == 0 || (b_[stem_len - 1] != 's' && b_[stem_len - 1] != 't'))) {
        return;
      }
      if (Measure(stem_len) > 1) b_.resize(stem_len);
      return;
    }
  }

  void Step5a() {
    if (!EndsWith("e")) return;
    const size_t stem_len = b_.size() - 1;
    const int m = Measure(stem_len);
    if (m > 1 || (m == 1 && !EndsCvc(stem_len))) b_.pop_back();
  }

  void Step5b() {
    if (Measure(b_.size()) > 1 && EndsDoubleConsonant(b_.size()) &&
        b_.back() == 'l') {
      b_.pop_back();
    }
  }

  std::string b_;
};

}  // namespace

std::string PorterStem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  const bool ascii_lower = std::all_of(word.begin(), word.end(), [](char c) {
    return c >= 'a' && c <= 'z';
  });
  if (!ascii_lower) return std::string(word);
  return Stemmer(word).Run();
}

}  // namespace stfidf
