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

#ifndef STFIDF_XQUAD_H_
#define STFIDF_XQUAD_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stfidf/text_pipeline.h"

namespace stfidf {

struct Paragraph {
  std::string id;  // "<article>-<paragraph>", zero-based
  std::string context;
};

struct Question {
  std::string id;
  std::string text;
  uint32_t gold;  // index into XquadSplit::paragraphs
};

// One language of a SQuAD-v1.1-schema file: every (article, paragraph) pair
// is a retrieval unit and every question's gold unit is its own paragraph.
struct XquadSplit {
  std::string language;
  std::vector<Paragraph> paragraphs;
  std::vector<Question> questions;
};

// Throws ParseError naming the offending JSON path.
XquadSplit ParseXquad(std::string_view json, std::string language);
// The language is taken from a "xquad.<lang>.json" file name when present.
XquadSplit LoadXquad(const std::filesystem::path& path);

struct EvalResult {
  std::string language;
  std::string pipeline;
  size_t correct = 0;
  size_t total = 0;
  // Rank-1 hit for each question, in question order.
  std::vector<bool> per_question;

  double accuracy() const {
    return total == 0 ? 0.0
                      : static_cast<double>(correct) / static_cast<double>(total);
  }
};

struct EvalOptions {
  unsigned threads = 1;
};

// Indexes every paragraph under `pipeline`, runs each question as a query
// and counts rank-1 hits on the gold paragraph. A question whose query
// retrieves nothing counts as a miss.
EvalResult Evaluate(const XquadSplit& split, const Pipeline& pipeline,
                    const EvalOptions& options = {});
EvalResult Evaluate(const XquadSplit& split, const PipelineConfig& config,
                    const EvalOptions& options = {});

// Evaluates configs x languages (config-major) against
// `<dataset_dir>/xquad.<lang>.json`. Throws IoError naming a missing file.
std::vector<EvalResult> RunAblationSuite(
    const std::filesystem::path& dataset_dir,
    std::span<const PipelineConfig> configs,
    std::span<const std::string> languages, const EvalOptions& options = {});

enum class ReportFormat { kTsv, kTable };

// Accuracy is printed in percent with one decimal.
std::string RenderReport(std::span<const EvalResult> results,
                         ReportFormat format);

std::string FormatAccuracy(double accuracy);

}  // namespace stfidf

#endif  // STFIDF_XQUAD_H_
