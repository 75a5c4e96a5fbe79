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

#include "stfidf/vector_index.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "parallel.h"
#include "stfidf/errors.h"

namespace stfidf {
namespace {

constexpr std::string_view kIndexMagic = "STFIDF-IDX";
constexpr std::string_view kIndexVersion = "1";

template <typename Int>
Int ParseInt(std::string_view text, size_t line_no) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError::AtLine(line_no, "invalid integer '" + std::string(text) + "'");
  }
  return value;
}

double ParseHexDouble(std::string_view text, size_t line_no) {
  const std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (end == owned.c_str() || *end != '\0' || !(value > 0.0)) {
    throw ParseError::AtLine(line_no, "invalid weight '" + owned + "'");
  }
  return value;
}

void CheckNoNewline(std::string_view s, std::string_view what) {
  if (s.find('\n') != std::string_view::npos) {
    throw InvalidInputError(std::string(what) + " contains a newline");
  }
}

}  // namespace

Vocabulary Vocabulary::Build(std::span<const TokenSequence> docs) {
  if (docs.empty()) throw InvalidInputError("no documents to build a vocabulary");
  Vocabulary vocab;
  vocab.num_documents_ = static_cast<uint32_t>(docs.size());
  std::vector<uint32_t> last_doc;
  for (uint32_t d = 0; d < docs.size(); ++d) {
    for (const std::string& token : docs[d]) {
      auto [it, inserted] =
          vocab.ids_.emplace(token, static_cast<uint32_t>(vocab.tokens_.size()));
      if (inserted) {
        vocab.tokens_.push_back(token);
        vocab.df_.push_back(0);
        last_doc.push_back(UINT32_MAX);
      }
      const uint32_t id = it->second;
      if (last_doc[id] != d) {
        last_doc[id] = d;
        ++vocab.df_[id];
      }
    }
  }
  vocab.ComputeIdf();
  return vocab;
}

Vocabulary Vocabulary::FromParts(std::vector<std::string> tokens,
                                 std::vector<uint32_t> df,
                                 uint32_t num_documents) {
  if (tokens.size() != df.size()) {
    throw InvalidInputError("token and df counts differ");
  }
  if (num_documents == 0) throw InvalidInputError("vocabulary has no documents");
  Vocabulary vocab;
  vocab.num_documents_ = num_documents;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (df[i] < 1 || df[i] > num_documents) {
      throw InvalidInputError("df of '" + tokens[i] + "' outside [1, N]");
    }
    if (!vocab.ids_.emplace(tokens[i], static_cast<uint32_t>(i)).second) {
      throw InvalidInputError("duplicate token '" + tokens[i] + "'");
    }
  }
  vocab.tokens_ = std::move(tokens);
  vocab.df_ = std::move(df);
  vocab.ComputeIdf();
  return vocab;
}

void Vocabulary::ComputeIdf() {
  idf_.resize(df_.size());
  const double n = static_cast<double>(num_documents_);
  for (size_t i = 0; i < df_.size(); ++i) {
    idf_[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(df_[i]))) + 1.0;
  }
}

std::optional<uint32_t> Vocabulary::Find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::CheckId(uint32_t id) const {
  if (id >= tokens_.size()) {
    throw LookupError("token id " + std::to_string(id) + " not in vocabulary");
  }
}

const std::string& Vocabulary::token(uint32_t id) const {
  CheckId(id);
  return tokens_[id];
}

uint32_t Vocabulary::df(uint32_t id) const {
  CheckId(id);
  return df_[id];
}

double Vocabulary::Idf(uint32_t id) const {
  CheckId(id);
  return idf_[id];
}

SparseVector SparseVector::Normalize(std::vector<Entry> weights) {
  std::sort(weights.begin(), weights.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVector v;
  for (const Entry& e : weights) {
    if (!v.entries_.empty() && v.entries_.back().first == e.first) {
      v.entries_.back().second += e.second;
    } else {
      v.entries_.push_back(e);
    }
  }
  std::erase_if(v.entries_, [](const Entry& e) { return !(e.second > 0.0); });
  const double norm = v.Norm();
  if (norm > 0.0) {
    for (Entry& e : v.entries_) e.second /= norm;
  }
  return v;
}

SparseVector SparseVector::FromNormalized(std::vector<Entry> entries) {
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].second > 0.0)) {
      throw InvalidInputError("sparse vector weights must be positive");
    }
    if (i > 0 && entries[i].first <= entries[i - 1].first) {
      throw InvalidInputError("sparse vector ids must strictly increase");
    }
  }
  SparseVector v;
  v.entries_ = std::move(entries);
  if (!v.empty() && std::abs(v.Norm() - 1.0) > 1e-9) {
    throw InvalidInputError("sparse vector is not L2-normalized");
  }
  return v;
}

double SparseVector::Norm() const {
  double sum = 0.0;
  for (const Entry& e : entries_) sum += e.second * e.second;
  return std::sqrt(sum);
}

SparseVector Vectorize(const TokenSequence& tokens, const Vocabulary& vocab) {
  std::unordered_map<uint32_t, uint32_t> counts;
  for (const std::string& token : tokens) {
    if (auto id = vocab.Find(token)) ++counts[*id];
  }
  std::vector<SparseVector::Entry> weights;
  weights.reserve(counts.size());
  for (const auto& [id, count] : counts) {
    weights.emplace_back(id, static_cast<double>(count) * vocab.Idf(id));
  }
  return SparseVector::Normalize(std::move(weights));
}

double Cosine(const SparseVector& a, const SparseVector& b) {
  auto x = a.entries();
  auto y = b.entries();
  double dot = 0.0;
  size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first < y[j].first) {
      ++i;
    } else if (y[j].first < x[i].first) {
      ++j;
    } else {
      dot += x[i].second * y[j].second;
      ++i;
      ++j;
    }
  }
  return dot;
}

Index Index::Build(std::vector<Document> docs, unsigned threads) {
  if (docs.empty()) throw InvalidInputError("cannot index an empty collection");
  std::unordered_set<std::string> seen;
  for (const Document& doc : docs) {
    if (!seen.insert(doc.id).second) {
      throw InvalidInputError("duplicate document id '" + doc.id + "'");
    }
  }

  std::vector<TokenSequence> token_lists;
  token_lists.reserve(docs.size());
  Index index;
  for (Document& doc : docs) {
    index.doc_ids_.push_back(std::move(doc.id));
    token_lists.push_back(std::move(doc.tokens));
  }
  index.vocabulary_ = Vocabulary::Build(token_lists);

  index.doc_vectors_.resize(token_lists.size());
  internal::ParallelFor(token_lists.size(), threads, [&](size_t d) {
    index.doc_vectors_[d] = Vectorize(token_lists[d], index.vocabulary_);
  });
  index.BuildPostings();
  return index;
}

void Index::BuildPostings() {
  postings_.assign(vocabulary_.size(), {});
  for (uint32_t d = 0; d < doc_vectors_.size(); ++d) {
    for (const auto& [id, weight] : doc_vectors_[d].entries()) {
      postings_[id].push_back({d, weight});
    }
  }
}

std::vector<ScoredDocument> Index::Query(const TokenSequence& tokens,
                                         size_t k) const {
  if (k == 0) throw InvalidInputError("k must be at least 1");
  const SparseVector query = VectorizeQuery(tokens);
  std::vector<double> scores(doc_ids_.size(), 0.0);
  std::vector<uint32_t> touched;
  for (const auto& [id, query_weight] : query.entries()) {
    for (const Posting& p : postings_[id]) {
      if (scores[p.doc] == 0.0) touched.push_back(p.doc);
      scores[p.doc] += query_weight * p.weight;
    }
  }
  std::vector<ScoredDocument> ranked;
  ranked.reserve(touched.size());
  for (uint32_t doc : touched) {
    if (scores[doc] > 0.0) ranked.push_back({doc, scores[doc]});
  }
  auto better = [](const ScoredDocument& a, const ScoredDocument& b) {
    return a.score != b.score ? a.score > b.score : a.doc < b.doc;
  };
  if (k < ranked.size()) {
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<ptrdiff_t>(k),
                      ranked.end(), better);
    ranked.resize(k);
  } else {
    std::sort(ranked.begin(), ranked.end(), better);
  }
  return ranked;
}

void Index::Write(std::ostream& out) const {
  out << kIndexMagic << ' ' << kIndexVersion << '\n';
  out << "N " << doc_ids_.size() << '\n';
  out << "V " << vocabulary_.size() << '\n';
  for (const auto& [key, value] : metadata_) {
    CheckNoNewline(key, "metadata key");
    CheckNoNewline(value, "metadata value");
    if (key.find('\t') != std::string::npos) {
      throw InvalidInputError("metadata key contains a tab");
    }
    out << "META " << key << '\t' << value << '\n';
  }
  for (const std::string& id : doc_ids_) {
    CheckNoNewline(id, "document id");
    out << "D " << id << '\n';
  }
  for (uint32_t t = 0; t < vocabulary_.size(); ++t) {
    CheckNoNewline(vocabulary_.token(t), "token");
    out << "T " << t << '\t' << vocabulary_.df(t) << '\t' << vocabulary_.token(t)
        << '\n';
  }
  char buf[64];
  for (uint32_t t = 0; t < postings_.size(); ++t) {
    out << "L " << t;
    for (const Posting& p : postings_[t]) {
      std::snprintf(buf, sizeof(buf), "%a", p.weight);
      out << ' ' << p.doc << ':' << buf;
    }
    out << '\n';
  }
}

Index Index::Read(std::istream& in) {
  std::string line;
  size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next_line()) throw ParseError::AtLine(1, "empty index file");
  if (line.rfind(kIndexMagic, 0) != 0) {
    throw ParseError::AtLine(line_no, "missing STFIDF-IDX header");
  }
  if (line != std::string(kIndexMagic) + " " + std::string(kIndexVersion)) {
    throw ParseError::AtLine(line_no, "unsupported index version '" +
                                          line.substr(kIndexMagic.size()) +
                                          "', expected version " +
                                          std::string(kIndexVersion));
  }

  Index index;
  size_t num_docs = 0, vocab_size = 0;
  bool have_n = false, have_v = false;
  std::vector<std::string> tokens;
  std::vector<uint32_t> df;
  std::vector<std::vector<Posting>> postings;
  while (next_line()) {
    if (line.empty()) continue;
    const size_t space = line.find(' ');
    if (space == std::string::npos) {
      throw ParseError::AtLine(line_no, "malformed line");
    }
    const std::string_view tag = std::string_view(line).substr(0, space);
    const std::string_view body = std::string_view(line).substr(space + 1);
    if (tag == "N") {
      num_docs = ParseInt<size_t>(body, line_no);
      have_n = true;
    } else if (tag == "V") {
      vocab_size = ParseInt<size_t>(body, line_no);
      have_v = true;
    } else if (tag == "META") {
      const size_t tab = body.find('\t');
      if (tab == std::string_view::npos) {
        throw ParseError::AtLine(line_no, "metadata must be '<key>\\t<value>'");
      }
      index.metadata_[std::string(body.substr(0, tab))] =
          std::string(body.substr(tab + 1));
    } else if (tag == "D") {
      index.doc_ids_.emplace_back(body);
    } else if (tag == "T") {
      const size_t tab1 = body.find('\t');
      const size_t tab2 =
          tab1 == std::string_view::npos ? tab1 : body.find('\t', tab1 + 1);
      if (tab2 == std::string_view::npos) {
        throw ParseError::AtLine(line_no, "token must be '<id>\\t<df>\\t<token>'");
      }
      const auto id = ParseInt<uint32_t>(body.substr(0, tab1), line_no);
      if (id != tokens.size()) {
        throw ParseError::AtLine(line_no, "token ids must be dense and ordered");
      }
      df.push_back(ParseInt<uint32_t>(body.substr(tab1 + 1, tab2 - tab1 - 1), line_no));
      tokens.emplace_back(body.substr(tab2 + 1));
    } else if (tag == "L") {
      size_t pos = body.find(' ');
      const auto id = ParseInt<uint32_t>(body.substr(0, pos), line_no);
      if (id != postings.size()) {
        throw ParseError::AtLine(line_no, "posting lists must be dense and ordered");
      }
      std::vector<Posting> list;
      while (pos != std::string_view::npos) {
        const size_t start = pos + 1;
        pos = body.find(' ', start);
        const std::string_view item = body.substr(start, pos - start);
        const size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
          throw ParseError::AtLine(line_no, "posting must be '<doc>:<weight>'");
        }
        const auto doc = ParseInt<uint32_t>(item.substr(0, colon), line_no);
        if (!list.empty() && doc <= list.back().doc) {
          throw ParseError::AtLine(line_no, "postings must be sorted by document");
        }
        list.push_back({doc, ParseHexDouble(item.substr(colon + 1), line_no)});
      }
      postings.push_back(std::move(list));
    } else {
      throw ParseError::AtLine(line_no, "unknown record '" + std::string(tag) + "'");
    }
  }

  if (!have_n || !have_v) throw ParseError::AtLine(line_no, "missing N or V record");
  if (index.doc_ids_.size() != num_docs) {
    throw ParseError::AtLine(line_no, "expected " + std::to_string(num_docs) +
                                          " documents, found " +
                                          std::to_string(index.doc_ids_.size()));
  }
  if (tokens.size() != vocab_size || postings.size() != vocab_size) {
    throw ParseError::AtLine(line_no, "vocabulary size does not match V record");
  }
  try {
    index.vocabulary_ = Vocabulary::FromParts(std::move(tokens), std::move(df),
                                              static_cast<uint32_t>(num_docs));
  } catch (const InvalidInputError& e) {
    throw ParseError::AtLine(line_no, e.what());
  }
  std::vector<std::vector<SparseVector::Entry>> rows(num_docs);
  for (uint32_t t = 0; t < postings.size(); ++t) {
    if (postings[t].size() != index.vocabulary_.df(t)) {
      throw ParseError::AtLine(line_no, "postings of token " + std::to_string(t) +
                                            " disagree with its df");
    }
    for (const Posting& p : postings[t]) {
      if (p.doc >= num_docs) {
        throw ParseError::AtLine(line_no, "posting refers to unknown document");
      }
      rows[p.doc].emplace_back(t, p.weight);
    }
  }
  index.postings_ = std::move(postings);
  index.doc_vectors_.reserve(num_docs);
  for (auto& row : rows) {
    try {
      index.doc_vectors_.push_back(SparseVector::FromNormalized(std::move(row)));
    } catch (const InvalidInputError& e) {
      throw ParseError::AtLine(line_no, e.what());
    }
  }
  return index;
}

void Index::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write index file " + path.string());
  Write(out);
  out.flush();
  if (!out) throw IoError("failed writing index file " + path.string());
}

Index Index::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read index file " + path.string());
  try {
    return Read(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.where(), e.message());
  }
}

}  // namespace stfidf
