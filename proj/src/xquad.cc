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

#include "stfidf/xquad.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "parallel.h"
#include "stfidf/errors.h"
#include "stfidf/vector_index.h"

namespace stfidf {
namespace {

using nlohmann::json;

const json& Member(const json& object, const char* key, json::value_t type,
                   const std::string& path) {
  const std::string where = path + "." + key;
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(where, "missing field");
  if (it->type() != type) {
    throw ParseError(where, std::string("expected ") +
                                json(type).type_name() + ", found " +
                                it->type_name());
  }
  return *it;
}

std::string Indexed(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

}  // namespace

XquadSplit ParseXquad(std::string_view text, std::string language) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("$", "expected a JSON object");

  XquadSplit split;
  split.language = std::move(language);
  const json& data = Member(root, "data", json::value_t::array, "$");
  for (size_t a = 0; a < data.size(); ++a) {
    const std::string article_path = Indexed("data", a);
    const json& article = data[a];
    if (!article.is_object()) throw ParseError(article_path, "expected an object");
    if (article.contains("qas")) {
      throw ParseError(article_path + ".qas", "question outside any paragraph");
    }
    const json& paragraphs =
        Member(article, "paragraphs", json::value_t::array, article_path);
    for (size_t p = 0; p < paragraphs.size(); ++p) {
      const std::string para_path = Indexed(article_path + ".paragraphs", p);
      const json& para = paragraphs[p];
      if (!para.is_object()) throw ParseError(para_path, "expected an object");
      const auto gold = static_cast<uint32_t>(split.paragraphs.size());
      split.paragraphs.push_back(
          {std::to_string(a) + "-" + std::to_string(p),
           Member(para, "context", json::value_t::string, para_path)
               .get<std::string>()});
      const json& qas = Member(para, "qas", json::value_t::array, para_path);
      for (size_t q = 0; q < qas.size(); ++q) {
        const std::string qa_path = Indexed(para_path + ".qas", q);
        const json& qa = qas[q];
        if (!qa.is_object()) throw ParseError(qa_path, "expected an object");
        split.questions.push_back(
            {Member(qa, "id", json::value_t::string, qa_path).get<std::string>(),
             Member(qa, "question", json::value_t::string, qa_path)
                 .get<std::string>(),
             gold});
      }
    }
  }
  return split;
}

XquadSplit LoadXquad(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read XQuAD file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();

  std::string language;
  const std::string name = path.filename().string();
  constexpr std::string_view kPrefix = "xquad.";
  constexpr std::string_view kSuffix = ".json";
  if (name.size() > kPrefix.size() + kSuffix.size() && name.starts_with(kPrefix) &&
      name.ends_with(kSuffix)) {
    language = name.substr(kPrefix.size(),
                           name.size() - kPrefix.size() - kSuffix.size());
  }
  try {
    return ParseXquad(buffer.str(), std::move(language));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.where(), e.message());
  }
}

EvalResult Evaluate(const XquadSplit& split, const Pipeline& pipeline,
                    const EvalOptions& options) {
  EvalResult result;
  result.language = split.language;
  result.pipeline = pipeline.config().ToString();
  result.total = split.questions.size();
  if (split.paragraphs.empty()) {
    result.per_question.assign(result.total, false);
    return result;
  }

  std::vector<Index::Document> docs(split.paragraphs.size());
  internal::ParallelFor(docs.size(), options.threads, [&](size_t i) {
    docs[i] = {split.paragraphs[i].id, pipeline.Run(split.paragraphs[i].context)};
  });
  const Index index = Index::Build(std::move(docs), options.threads);

  std::vector<char> hits(split.questions.size(), 0);
  internal::ParallelFor(hits.size(), options.threads, [&](size_t q) {
    const Question& question = split.questions[q];
    const auto top = index.Query(pipeline.Run(question.text), 1);
    hits[q] = !top.empty() && top.front().doc == question.gold;
  });
  result.per_question.assign(hits.begin(), hits.end());
  result.correct = static_cast<size_t>(std::count(hits.begin(), hits.end(), 1));
  return result;
}

EvalResult Evaluate(const XquadSplit& split, const PipelineConfig& config,
                    const EvalOptions& options) {
  return Evaluate(split, Pipeline(config), options);
}

std::vector<EvalResult> RunAblationSuite(
    const std::filesystem::path& dataset_dir,
    std::span<const PipelineConfig> configs,
    std::span<const std::string> languages, const EvalOptions& options) {
  std::vector<EvalResult> results;
  if (configs.empty() || languages.empty()) return results;
  std::map<std::string, XquadSplit> splits;
  for (const std::string& language : languages) {
    if (splits.contains(language)) continue;
    const auto path = dataset_dir / ("xquad." + language + ".json");
    if (!std::filesystem::exists(path)) {
      throw IoError("missing XQuAD file " + path.string());
    }
    splits.emplace(language, LoadXquad(path));
  }
  for (const PipelineConfig& config : configs) {
    const Pipeline pipeline(config);
    for (const std::string& language : languages) {
      results.push_back(Evaluate(splits.at(language), pipeline, options));
    }
  }
  return results;
}

std::string FormatAccuracy(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", accuracy * 100.0);
  return buf;
}

std::string RenderReport(std::span<const EvalResult> results,
                         ReportFormat format) {
  static const std::array<std::string, 5> kHeader = {
      "language", "pipeline", "correct", "total", "accuracy"};
  std::vector<std::array<std::string, 5>> rows = {kHeader};
  for (const EvalResult& r : results) {
    rows.push_back({r.language, r.pipeline, std::to_string(r.correct),
                    std::to_string(r.total), FormatAccuracy(r.accuracy())});
  }

  std::string out;
  if (format == ReportFormat::kTsv) {
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out += '\t';
        out += row[c];
      }
      out += '\n';
    }
    return out;
  }

  std::array<size_t, 5> width{};
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - row[c].size(), ' ');
      if (c > 0) line += "  ";
      // Text columns left-aligned, numeric columns right-aligned.
      line += c < 2 ? row[c] + pad : pad + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

}  // namespace stfidf
