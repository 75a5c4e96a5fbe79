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

#ifndef STFIDF_LANGUAGES_H_
#define STFIDF_LANGUAGES_H_

#include <string>
#include <string_view>
#include <vector>

namespace stfidf {

struct Language {
  std::string code;
  std::string name;
};

// The 100 languages of the reference multilingual subword model, read from
// the bundled languages.tsv.
const std::vector<Language>& SupportedLanguages();

bool IsSupportedLanguage(std::string_view code);

// The twelve XQuAD languages, in the order results are usually reported.
const std::vector<std::string>& XquadLanguages();

}  // namespace stfidf

#endif  // STFIDF_LANGUAGES_H_
