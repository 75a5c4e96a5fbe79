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

#include "stfidf/languages.h"

#include <algorithm>

#include "resources.h"

namespace stfidf {

const std::vector<Language>& SupportedLanguages() {
  static const std::vector<Language> kLanguages = [] {
    std::vector<Language> out;
    const std::string_view tsv = resources::LanguagesTsv();
    size_t pos = 0;
    while (pos < tsv.size()) {
      const size_t end = std::min(tsv.find('\n', pos), tsv.size());
      const std::string_view line = tsv.substr(pos, end - pos);
      pos = end + 1;
      if (line.empty() || line.front() == '#') continue;
      const size_t tab = line.find('\t');
      if (tab == std::string_view::npos) continue;
      out.push_back({std::string(line.substr(0, tab)),
                     std::string(line.substr(tab + 1))});
    }
    return out;
  }();
  return kLanguages;
}

bool IsSupportedLanguage(std::string_view code) {
  const auto& all = SupportedLanguages();
  return std::any_of(all.begin(), all.end(),
                     [code](const Language& l) { return l.code == code; });
}

const std::vector<std::string>& XquadLanguages() {
  static const std::vector<std::string> kXquad = {
      "en", "es", "de", "el", "ru", "tr", "ar", "vi", "th", "zh", "hi", "ro"};
  return kXquad;
}

}  // namespace stfidf
