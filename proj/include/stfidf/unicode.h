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

#ifndef STFIDF_UNICODE_H_
#define STFIDF_UNICODE_H_

#include <string>
#include <string_view>
#include <vector>

namespace stfidf::unicode {

// Prefixed to every word before subword segmentation (U+2581).
inline constexpr char32_t kWordBoundary = U'\u2581';
// Stands in for every scalar outside a subword model's alphabet (U+FFFD).
inline constexpr char32_t kUnknown = U'\uFFFD';

// Decodes UTF-8. Ill-formed sequences decode to U+FFFD.
std::u32string Decode(std::string_view utf8);

std::string Encode(std::u32string_view text);
std::string Encode(char32_t scalar);

// NFKC normalization. Ill-formed UTF-8 is repaired to U+FFFD first.
std::string NormalizeNfkc(std::string_view utf8);

// Letters (L*), digits/numbers (N*) and combining marks (M*). Marks are kept
// so that vowel signs in abugidas stay inside their word.
bool IsWordCharacter(char32_t c);

// Unicode White_Space property.
bool IsWhitespace(char32_t c);

// Simple (1:1) lowercase mapping.
char32_t ToLower(char32_t c);

// Splits on runs of whitespace; never yields empty words.
std::vector<std::u32string> SplitOnWhitespace(std::u32string_view text);

}  // namespace stfidf::unicode

#endif  // STFIDF_UNICODE_H_
