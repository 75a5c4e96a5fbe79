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

#include "stfidf/bpe_model.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "stfidf/errors.h"
#include "stfidf/unicode.h"

namespace stfidf {
namespace {

constexpr std::string_view kModelMagic = "STFIDF-BPE";
constexpr std::string_view kModelVersion = "1";

uint64_t PairKey(int32_t left, int32_t right) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(left)) << 32) |
         static_cast<uint32_t>(right);
}

void CheckCoverage(double coverage) {
  if (!(coverage > 0.0 && coverage <= 1.0)) {
    throw ConfigError("coverage must be in (0, 1], got " +
                      std::to_string(coverage));
  }
}

std::vector<std::string_view> SplitSpaces(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  while (pos < line.size()) {
    const size_t end = std::min(line.find(' ', pos), line.size());
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return fields;
}

}  // namespace

std::string_view EncoderModeName(EncoderMode mode) {
  switch (mode) {
    case EncoderMode::kMergeRank:
      return "merge-rank";
    case EncoderMode::kLongestMatch:
      return "longest-match";
  }
  return "unknown";
}

BpeModel BpeModel::FromMerges(std::vector<char32_t> alphabet,
                              std::vector<Merge> merges, double coverage) {
  CheckCoverage(coverage);
  alphabet.push_back(unicode::kWordBoundary);
  alphabet.push_back(unicode::kUnknown);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  BpeModel model;
  model.mode_ = EncoderMode::kMergeRank;
  model.coverage_ = coverage;
  model.alphabet_ = std::move(alphabet);
  for (char32_t c : model.alphabet_) {
    model.pieces_.push_back(unicode::Encode(c));
  }
  std::unordered_map<std::string, int32_t> seen;
  for (size_t i = 0; i < model.pieces_.size(); ++i) {
    seen.emplace(model.pieces_[i], static_cast<int32_t>(i));
  }
  for (size_t rank = 0; rank < merges.size(); ++rank) {
    const Merge& merge = merges[rank];
    if (!seen.contains(merge.left) || !seen.contains(merge.right)) {
      throw ConfigError("merge " + std::to_string(rank) + " (" + merge.left +
                        ", " + merge.right +
                        ") uses a piece not formed by earlier merges");
    }
    std::string merged = merge.left + merge.right;
    if (seen.contains(merged)) {
      throw ConfigError("merge " + std::to_string(rank) + " yields duplicate piece " +
                        merged);
    }
    seen.emplace(merged, static_cast<int32_t>(model.pieces_.size()));
    model.pieces_.push_back(std::move(merged));
  }
  model.merges_ = std::move(merges);
  model.IndexPieces();
  return model;
}

BpeModel BpeModel::FromPieces(const std::vector<std::string>& pieces,
                              double coverage) {
  CheckCoverage(coverage);
  BpeModel model;
  model.mode_ = EncoderMode::kLongestMatch;
  model.coverage_ = coverage;
  std::unordered_map<std::string, int32_t> seen;
  for (const std::string& piece : pieces) {
    if (piece.empty() || seen.contains(piece)) continue;
    seen.emplace(piece, static_cast<int32_t>(model.pieces_.size()));
    model.pieces_.push_back(piece);
  }
  if (model.pieces_.empty()) {
    throw InvalidInputError("vocabulary contains no pieces");
  }
  if (!seen.contains(std::string(kBoundaryPiece))) {
    model.pieces_.emplace_back(kBoundaryPiece);
  }
  model.alphabet_ = {unicode::kWordBoundary, unicode::kUnknown};
  for (const std::string& piece : model.pieces_) {
    const std::u32string wide = unicode::Decode(piece);
    if (wide.size() == 1) model.alphabet_.push_back(wide[0]);
  }
  std::sort(model.alphabet_.begin(), model.alphabet_.end());
  model.alphabet_.erase(
      std::unique(model.alphabet_.begin(), model.alphabet_.end()),
      model.alphabet_.end());
  model.IndexPieces();
  return model;
}

void BpeModel::IndexPieces() {
  piece_ids_.clear();
  for (size_t i = 0; i < pieces_.size(); ++i) {
    piece_ids_.emplace(pieces_[i], static_cast<int32_t>(i));
  }
  scalar_ids_.clear();
  for (char32_t c : alphabet_) {
    auto it = piece_ids_.find(unicode::Encode(c));
    if (it != piece_ids_.end()) scalar_ids_.emplace(c, it->second);
  }
  merge_ranks_.clear();
  for (size_t rank = 0; rank < merges_.size(); ++rank) {
    const Merge& m = merges_[rank];
    merge_ranks_.emplace(
        PairKey(piece_ids_.at(m.left), piece_ids_.at(m.right)),
        std::make_pair(static_cast<int32_t>(rank),
                       piece_ids_.at(m.left + m.right)));
  }
  wide_pieces_.clear();
  max_piece_length_ = 0;
  if (mode_ == EncoderMode::kLongestMatch) {
    for (size_t i = 0; i < pieces_.size(); ++i) {
      std::u32string wide = unicode::Decode(pieces_[i]);
      max_piece_length_ = std::max(max_piece_length_, wide.size());
      wide_pieces_.emplace(std::move(wide), static_cast<int32_t>(i));
    }
  }
}

bool BpeModel::HasPiece(std::string_view piece) const {
  return piece_ids_.contains(std::string(piece));
}

bool BpeModel::InAlphabet(char32_t c) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), c);
}

SubwordSequence BpeModel::Encode(std::string_view text) const {
  SubwordSequence out;
  const std::u32string normalized =
      unicode::Decode(unicode::NormalizeNfkc(text));
  for (const std::u32string& word : unicode::SplitOnWhitespace(normalized)) {
    std::u32string marked;
    marked.reserve(word.size() + 1);
    marked.push_back(unicode::kWordBoundary);
    marked.append(word);
    if (mode_ == EncoderMode::kMergeRank) {
      EncodeWordByRank(marked, &out);
    } else {
      EncodeWordLongest(marked, &out);
    }
  }
  return out;
}

void BpeModel::EncodeWordByRank(const std::u32string& word,
                                SubwordSequence* out) const {
  const int32_t unknown_id = scalar_ids_.at(unicode::kUnknown);
  std::vector<int32_t> symbols;
  symbols.reserve(word.size());
  for (char32_t c : word) {
    auto it = scalar_ids_.find(c);
    symbols.push_back(it == scalar_ids_.end() ? unknown_id : it->second);
  }

  std::vector<int32_t> next;
  while (symbols.size() > 1) {
    int32_t best_rank = std::numeric_limits<int32_t>::max();
    int32_t best_left = -1, best_right = -1, best_result = -1;
    for (size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = merge_ranks_.find(PairKey(symbols[i], symbols[i + 1]));
      if (it != merge_ranks_.end() && it->second.first < best_rank) {
        best_rank = it->second.first;
        best_left = symbols[i];
        best_right = symbols[i + 1];
        best_result = it->second.second;
      }
    }
    if (best_result < 0) break;
    // Left-to-right, non-overlapping; identical to how training applied it.
    next.clear();
    for (size_t i = 0; i < symbols.size();) {
      if (i + 1 < symbols.size() && symbols[i] == best_left &&
          symbols[i + 1] == best_right) {
        next.push_back(best_result);
        i += 2;
      } else {
        next.push_back(symbols[i]);
        ++i;
      }
    }
    symbols.swap(next);
  }
  for (int32_t id : symbols) out->push_back(pieces_[id]);
}

void BpeModel::EncodeWordLongest(const std::u32string& word,
                                 SubwordSequence* out) const {
  size_t cursor = 0;
  std::u32string probe;
  while (cursor < word.size()) {
    const size_t longest = std::min(max_piece_length_, word.size() - cursor);
    int32_t match = -1;
    size_t match_len = 0;
    for (size_t len = longest; len >= 1; --len) {
      probe.assign(word, cursor, len);
      auto it = wide_pieces_.find(probe);
      if (it != wide_pieces_.end()) {
        match = it->second;
        match_len = len;
        break;
      }
    }
    if (match < 0) {
      out->emplace_back(kUnknownPiece);
      ++cursor;
    } else {
      out->push_back(pieces_[match]);
      cursor += match_len;
    }
  }
}

void WriteModel(const BpeModel& model, std::ostream& out) {
  char coverage[64];
  std::snprintf(coverage, sizeof(coverage), "%.17g", model.coverage());
  out << kModelMagic << ' ' << kModelVersion << ' '
      << EncoderModeName(model.mode()) << ' ' << coverage << '\n';
  char hex[16];
  for (char32_t c : model.alphabet()) {
    std::snprintf(hex, sizeof(hex), "%04X", static_cast<unsigned>(c));
    out << "A " << hex << '\n';
  }
  for (const Merge& m : model.merges()) {
    out << "M " << m.left << '\t' << m.right << '\n';
  }
  for (const std::string& piece : model.pieces()) {
    out << "P " << piece << '\n';
  }
}

BpeModel ReadModel(std::istream& in) {
  std::string line;
  size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError::AtLine(1, "empty model file");
  }
  ++line_no;
  const std::vector<std::string_view> header = SplitSpaces(line);
  if (header.empty() || header[0] != kModelMagic) {
    throw ParseError::AtLine(line_no, "missing STFIDF-BPE header");
  }
  if (header.size() < 2 || header[1] != kModelVersion) {
    throw ParseError::AtLine(
        line_no, "unsupported model version '" +
                     std::string(header.size() < 2 ? "" : header[1]) +
                     "', expected version " + std::string(kModelVersion));
  }
  if (header.size() != 4) {
    throw ParseError::AtLine(line_no,
                             "header must be 'STFIDF-BPE 1 <mode> <coverage>'");
  }
  EncoderMode mode;
  if (header[2] == EncoderModeName(EncoderMode::kMergeRank)) {
    mode = EncoderMode::kMergeRank;
  } else if (header[2] == EncoderModeName(EncoderMode::kLongestMatch)) {
    mode = EncoderMode::kLongestMatch;
  } else {
    throw ParseError::AtLine(line_no, "unknown mode '" + std::string(header[2]) + "'");
  }
  const std::string coverage_text(header[3]);
  char* end = nullptr;
  const double coverage = std::strtod(coverage_text.c_str(), &end);
  if (end == coverage_text.c_str() || *end != '\0' ||
      !(coverage > 0.0 && coverage <= 1.0)) {
    throw ParseError::AtLine(line_no, "invalid coverage '" + coverage_text + "'");
  }

  std::vector<char32_t> alphabet;
  std::vector<Merge> merges;
  std::vector<std::string> pieces;
  std::vector<size_t> piece_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.size() < 3 || line[1] != ' ') {
      throw ParseError::AtLine(line_no, "malformed line");
    }
    const std::string_view body = std::string_view(line).substr(2);
    switch (line[0]) {
      case 'A': {
        uint32_t value = 0;
        auto [ptr, ec] =
            std::from_chars(body.data(), body.data() + body.size(), value, 16);
        if (ec != std::errc() || ptr != body.data() + body.size() ||
            value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
          throw ParseError::AtLine(line_no, "invalid alphabet scalar '" +
                                                std::string(body) + "'");
        }
        alphabet.push_back(static_cast<char32_t>(value));
        break;
      }
      case 'M': {
        const size_t tab = body.find('\t');
        if (tab == std::string_view::npos || tab == 0 ||
            tab + 1 == body.size() ||
            body.find('\t', tab + 1) != std::string_view::npos) {
          throw ParseError::AtLine(line_no, "merge must be '<left>\\t<right>'");
        }
        merges.push_back(
            {std::string(body.substr(0, tab)), std::string(body.substr(tab + 1))});
        break;
      }
      case 'P':
        pieces.emplace_back(body);
        piece_lines.push_back(line_no);
        break;
      default:
        throw ParseError::AtLine(line_no, "unknown record type '" +
                                              std::string(1, line[0]) + "'");
    }
  }

  BpeModel model = [&] {
    try {
      if (mode == EncoderMode::kMergeRank) {
        return BpeModel::FromMerges(alphabet, std::move(merges), coverage);
      }
      return BpeModel::FromPieces(pieces, coverage);
    } catch (const Error& e) {
      throw ParseError::AtLine(line_no, e.what());
    }
  }();

  alphabet.push_back(unicode::kWordBoundary);
  alphabet.push_back(unicode::kUnknown);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  if (mode == EncoderMode::kLongestMatch && alphabet.size() == 2) {
    // No A records; the alphabet is derived from the pieces.
  } else if (alphabet != model.alphabet()) {
    throw ParseError::AtLine(line_no,
                             "alphabet records disagree with the pieces");
  }
  if (pieces != model.pieces()) {
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (i >= model.pieces().size() || pieces[i] != model.pieces()[i]) {
        throw ParseError::AtLine(piece_lines[i],
                                 "piece '" + pieces[i] +
                                     "' does not match the derived vocabulary");
      }
    }
    throw ParseError::AtLine(line_no, "model declares " +
                                          std::to_string(pieces.size()) +
                                          " pieces, expected " +
                                          std::to_string(model.pieces().size()));
  }
  return model;
}

void SaveModel(const BpeModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file " + path.string());
  WriteModel(model, out);
  out.flush();
  if (!out) throw IoError("failed writing model file " + path.string());
}

BpeModel LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read model file " + path.string());
  try {
    return ReadModel(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.where(), e.message());
  }
}

BpeModel ImportExternalVocab(std::istream& in) {
  std::vector<std::string> pieces;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t tab = line.find('\t');
    if (tab != std::string::npos) line.resize(tab);
    if (!line.empty()) pieces.push_back(line);
  }
  if (pieces.empty()) throw InvalidInputError("vocabulary file is empty");
  return BpeModel::FromPieces(pieces);
}

BpeModel ImportExternalVocab(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read vocabulary file " + path.string());
  try {
    return ImportExternalVocab(in);
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(path.string() + ": " + e.what());
  }
}

}  // namespace stfidf
