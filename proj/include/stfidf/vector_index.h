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

#ifndef STFIDF_VECTOR_INDEX_H_
#define STFIDF_VECTOR_INDEX_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stfidf/text_pipeline.h"

namespace stfidf {

// Token <-> dense id map with per-token document frequencies. Immutable
// after construction.
class Vocabulary {
 public:
  // Ids follow first occurrence across `docs`. Throws InvalidInputError when
  // `docs` is empty.
  static Vocabulary Build(std::span<const TokenSequence> docs);

  // Reassembles a stored vocabulary. Throws InvalidInputError on duplicate
  // tokens or a df outside [1, num_documents].
  static Vocabulary FromParts(std::vector<std::string> tokens,
                              std::vector<uint32_t> df, uint32_t num_documents);

  size_t size() const { return tokens_.size(); }
  uint32_t num_documents() const { return num_documents_; }
  std::optional<uint32_t> Find(std::string_view token) const;

  // The accessors below throw LookupError for ids >= size().
  const std::string& token(uint32_t id) const;
  uint32_t df(uint32_t id) const;
  // Smoothed inverse document frequency, ln((1 + N) / (1 + df)) + 1.
  double Idf(uint32_t id) const;

 private:
  void CheckId(uint32_t id) const;
  void ComputeIdf();

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, uint32_t> ids_;
  std::vector<uint32_t> df_;
  std::vector<double> idf_;
  uint32_t num_documents_ = 0;
};

// L2-normalized id -> weight map, sorted by id, with strictly positive
// weights. Empty vectors are allowed and have norm 0.
class SparseVector {
 public:
  using Entry = std::pair<uint32_t, double>;

  SparseVector() = default;

  // Sums duplicate ids, drops non-positive weights, sorts and normalizes.
  static SparseVector Normalize(std::vector<Entry> weights);

  // Adopts entries that are already normalized, without touching their
  // bits. Throws InvalidInputError unless ids strictly increase, weights are
  // positive and the norm is 1 within 1e-9.
  static SparseVector FromNormalized(std::vector<Entry> entries);

  std::span<const Entry> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  double Norm() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

// Raw count x idf per in-vocabulary token, then L2-normalized. Tokens
// missing from the vocabulary are dropped.
SparseVector Vectorize(const TokenSequence& tokens, const Vocabulary& vocab);

// Dot product over shared ids; 0 when either side is empty.
double Cosine(const SparseVector& a, const SparseVector& b);

struct Posting {
  uint32_t doc;
  double weight;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct ScoredDocument {
  uint32_t doc;  // insertion index
  double score;
};

// TF-IDF inverted index. Postings hold the normalized document weights, so
// a query costs one pass over the postings of its in-vocabulary tokens.
// Immutable after Build/Read; Query is safe from concurrent readers.
class Index {
 public:
  struct Document {
    std::string id;
    TokenSequence tokens;
  };

  // Throws InvalidInputError on an empty collection or duplicate ids.
  // Documents are vectorized on up to `threads` workers.
  static Index Build(std::vector<Document> docs, unsigned threads = 1);

  // Top-k by cosine, scores descending, ties by ascending insertion order.
  // Only documents with a positive score are returned. Throws
  // InvalidInputError for k == 0.
  std::vector<ScoredDocument> Query(const TokenSequence& tokens,
                                    size_t k) const;

  SparseVector VectorizeQuery(const TokenSequence& tokens) const {
    return Vectorize(tokens, vocabulary_);
  }

  const Vocabulary& vocabulary() const { return vocabulary_; }
  size_t num_documents() const { return doc_ids_.size(); }
  const std::string& doc_id(uint32_t doc) const { return doc_ids_.at(doc); }
  const SparseVector& doc_vector(uint32_t doc) const {
    return doc_vectors_.at(doc);
  }
  std::span<const Posting> postings(uint32_t token_id) const {
    return postings_.at(token_id);
  }

  // Free-form key/value pairs stored with the index (pipeline, model path).
  const std::map<std::string, std::string>& metadata() const {
    return metadata_;
  }
  void SetMetadata(const std::string& key, const std::string& value) {
    metadata_[key] = value;
  }

  // Line-oriented "STFIDF-IDX 1" format. Weights are written as hex floats
  // so a reloaded index scores bit-identically.
  void Write(std::ostream& out) const;
  static Index Read(std::istream& in);
  void Save(const std::filesystem::path& path) const;
  static Index Load(const std::filesystem::path& path);

 private:
  void BuildPostings();

  Vocabulary vocabulary_;
  std::vector<std::string> doc_ids_;
  std::vector<SparseVector> doc_vectors_;
  std::vector<std::vector<Posting>> postings_;
  std::map<std::string, std::string> metadata_;
};

}  // namespace stfidf

#endif  // STFIDF_VECTOR_INDEX_H_
