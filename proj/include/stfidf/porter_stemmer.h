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

#ifndef STFIDF_PORTER_STEMMER_H_
#define STFIDF_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace stfidf {

// Porter's 1980 suffix-stripping algorithm (steps 1a through 5b), not the
// later Porter2/Snowball variant. Words of length <= 2 and words containing
// anything other than ASCII 'a'..'z' are returned unchanged.
std::string PorterStem(std::string_view word);

}  // namespace stfidf

#endif  // STFIDF_PORTER_STEMMER_H_
