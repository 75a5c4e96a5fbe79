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

#ifndef STFIDF_BPE_MODEL_H_
#define STFIDF_BPE_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stfidf {

// Ordered pieces produced by BpeModel::Encode. Every element is one of the
// model's pieces or the unknown piece.
using SubwordSequence = std::vector<std::string>;

// UTF-8 spellings of unicode::kWordBoundary and unicode::kUnknown.
inline constexpr std::string_view kBoundaryPiece = "\xE2\x96\x81";
inline constexpr std::string_view kUnknownPiece = "\xEF\xBF\xBD";

enum class EncoderMode {
  // Replays the learned merges in training order.
  kMergeRank,
  // Greedy longest vocabulary match at the cursor; used for imported
  // vocabularies whose merge order is unknown.
  kLongestMatch,
};

std::string_view EncoderModeName(EncoderMode mode);

struct Merge {
  std::string left;
  std::string right;

  friend bool operator==(const Merge&, const Merge&) = default;
};

// A subword tokenizer: alphabet, ordered merge list and piece vocabulary.
// Immutable once constructed; Encode is safe to call concurrently.
//
// Text is NFKC-normalized, split on whitespace, and each word is prefixed
// with U+2581 before segmentation. Scalars outside the alphabet become the
// unknown piece (U+FFFD), which never merges. Merges never cross words.
class BpeModel {
 public:
  // Merge-rank model. The alphabet always gains the boundary marker and the
  // unknown sentinel. Pieces are the alphabet (codepoint order) followed by
  // one new piece per merge. Throws ConfigError if a merge operand is not
  // formable from the alphabet and earlier merges, or if a merge result
  // duplicates an existing piece.
  static BpeModel FromMerges(std::vector<char32_t> alphabet,
                             std::vector<Merge> merges, double coverage);

  // Longest-match model over an explicit piece list. Duplicate pieces are
  // dropped (first occurrence wins) and the boundary marker is added when
  // missing. The alphabet is every single-scalar piece plus the boundary
  // marker and the unknown sentinel. Throws InvalidInputError when `pieces`
  // holds no non-empty piece.
  static BpeModel FromPieces(const std::vector<std::string>& pieces,
                             double coverage = 1.0);

  SubwordSequence Encode(std::string_view text) const;

  EncoderMode mode() const { return mode_; }
  double coverage() const { return coverage_; }
  // Sorted by codepoint.
  const std::vector<char32_t>& alphabet() const { return alphabet_; }
  const std::vector<Merge>& merges() const { return merges_; }
  const std::vector<std::string>& pieces() const { return pieces_; }
  bool HasPiece(std::string_view piece) const;
  bool InAlphabet(char32_t c) const;

  // Field-wise equality.
  friend bool operator==(const BpeModel& a, const BpeModel& b) {
    return a.mode_ == b.mode_ && a.coverage_ == b.coverage_ &&
           a.alphabet_ == b.alphabet_ && a.merges_ == b.merges_ &&
           a.pieces_ == b.pieces_;
  }

 private:
  BpeModel() = default;

  void IndexPieces();
  void EncodeWordByRank(const std::u32string& word, SubwordSequence* out) const;
  void EncodeWordLongest(const std::u32string& word, SubwordSequence* out) const;

  EncoderMode mode_ = EncoderMode::kMergeRank;
  double coverage_ = 1.0;
  std::vector<char32_t> alphabet_;
  std::vector<Merge> merges_;
  std::vector<std::string> pieces_;

  // Derived lookups.
  std::unordered_map<std::string, int32_t> piece_ids_;
  std::unordered_map<char32_t, int32_t> scalar_ids_;
  // (left id << 32 | right id) -> (rank, merged id).
  std::unordered_map<uint64_t, std::pair<int32_t, int32_t>> merge_ranks_;
  std::unordered_map<std::u32string, int32_t> wide_pieces_;
  size_t max_piece_length_ = 0;
};

// Text model format:
//   STFIDF-BPE 1 <merge-rank|longest-match> <coverage>
//   A <scalar hex>          one per alphabet scalar
//   M <left>\t<right>       merges, in training order
//   P <piece>               pieces, in id order
void WriteModel(const BpeModel& model, std::ostream& out);
BpeModel ReadModel(std::istream& in);
void SaveModel(const BpeModel& model, const std::filesystem::path& path);
BpeModel LoadModel(const std::filesystem::path& path);

// Reads an externally trained piece list: one piece per line, an optional
// tab-separated score column is ignored. Returns a longest-match model.
BpeModel ImportExternalVocab(const std::filesystem::path& path);
BpeModel ImportExternalVocab(std::istream& in);

}  // namespace stfidf

#endif  // STFIDF_BPE_MODEL_H_
