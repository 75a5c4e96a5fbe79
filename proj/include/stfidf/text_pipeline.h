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

#ifndef STFIDF_TEXT_PIPELINE_H_
#define STFIDF_TEXT_PIPELINE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "stfidf/bpe_model.h"

namespace stfidf {

// Ordered tokens produced by any pipeline stage.
using TokenSequence = std::vector<std::string>;

// Lowercases and splits on every scalar that is not a letter, number or
// combining mark. Empty fragments are dropped.
TokenSequence WordTokenize(std::string_view text);

class StopList {
 public:
  // Id of the English list compiled into the library.
  static constexpr std::string_view kDefaultId = "english-179";

  // One word per line; '#' starts a comment. Entries are lowercased.
  // Throws InvalidInputError if no word remains.
  static StopList Parse(std::string_view text, std::string source_id);
  static StopList Load(const std::filesystem::path& path);
  // A built-in list id, otherwise a path to a stop list file.
  static StopList Resolve(std::string_view id_or_path);

  bool Contains(std::string_view word) const;
  size_t size() const { return words_.size(); }
  const std::string& source_id() const { return source_id_; }

 private:
  std::unordered_set<std::string> words_;
  std::string source_id_;
};

TokenSequence RemoveStopWords(const TokenSequence& tokens,
                              const StopList& stops);

enum class Stage { kWord, kStop, kStem, kSubword };

std::string_view StageName(Stage stage);

// Validated, ordered list of stages. `word` comes first when present,
// `stop`/`stem` need `word`, `subword` comes last and needs a model path.
class PipelineConfig {
 public:
  PipelineConfig(std::vector<Stage> stages,
                 std::string stop_list_id = std::string(StopList::kDefaultId),
                 std::optional<std::filesystem::path> subword_model_path = {});

  // "word,stop,stem,subword" style. Throws ConfigError.
  static PipelineConfig Parse(
      std::string_view stages,
      std::string stop_list_id = std::string(StopList::kDefaultId),
      std::optional<std::filesystem::path> subword_model_path = {});

  const std::vector<Stage>& stages() const { return stages_; }
  bool Has(Stage stage) const;
  const std::string& stop_list_id() const { return stop_list_id_; }
  const std::optional<std::filesystem::path>& subword_model_path() const {
    return subword_model_path_;
  }
  // Comma-joined stage names, e.g. "word,stop,stem".
  std::string ToString() const;

 private:
  std::vector<Stage> stages_;
  std::string stop_list_id_;
  std::optional<std::filesystem::path> subword_model_path_;
};

// A configuration with its resources loaded. Immutable; Run may be called
// from any number of threads.
class Pipeline {
 public:
  // Loads the stop list and subword model named by `config`. Throws
  // ConfigError when a resource is missing or unreadable.
  explicit Pipeline(PipelineConfig config);
  // Uses an already loaded model instead of `config.subword_model_path()`.
  Pipeline(PipelineConfig config, std::shared_ptr<const BpeModel> model);

  TokenSequence Run(std::string_view text) const;

  const PipelineConfig& config() const { return config_; }

 private:
  void LoadStopList();

  PipelineConfig config_;
  std::shared_ptr<const StopList> stops_;
  std::shared_ptr<const BpeModel> model_;
};

// One-shot convenience: builds a Pipeline and runs it.
TokenSequence RunPipeline(const PipelineConfig& config, std::string_view text);

}  // namespace stfidf

#endif  // STFIDF_TEXT_PIPELINE_H_
