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

#include "stfidf/text_pipeline.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "resources.h"
#include "stfidf/errors.h"
#include "stfidf/porter_stemmer.h"
#include "stfidf/unicode.h"

namespace stfidf {
namespace {

std::string Lowercase(std::string_view word) {
  const bool ascii = std::all_of(word.begin(), word.end(), [](char c) {
    return static_cast<unsigned char>(c) < 0x80;
  });
  if (ascii) {
    std::string out(word);
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  }
  std::u32string wide = unicode::Decode(word);
  for (char32_t& c : wide) c = unicode::ToLower(c);
  return unicode::Encode(wide);
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

TokenSequence WordTokenize(std::string_view text) {
  TokenSequence tokens;
  std::u32string current;
  for (char32_t c : unicode::Decode(text)) {
    if (unicode::IsWordCharacter(c)) {
      current.push_back(unicode::ToLower(c));
    } else if (!current.empty()) {
      tokens.push_back(unicode::Encode(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(unicode::Encode(current));
  return tokens;
}

StopList StopList::Parse(std::string_view text, std::string source_id) {
  StopList list;
  list.source_id_ = std::move(source_id);
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (!line.empty()) list.words_.insert(Lowercase(line));
  }
  if (list.words_.empty()) {
    throw InvalidInputError("stop list '" + list.source_id_ + "' is empty");
  }
  return list;
}

StopList StopList::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read stop list " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path.string());
}

StopList StopList::Resolve(std::string_view id_or_path) {
  if (id_or_path == kDefaultId) {
    return Parse(resources::EnglishStopWords(), std::string(kDefaultId));
  }
  return Load(std::filesystem::path(id_or_path));
}

bool StopList::Contains(std::string_view word) const {
  return words_.contains(Lowercase(word));
}

TokenSequence RemoveStopWords(const TokenSequence& tokens,
                              const StopList& stops) {
  TokenSequence kept;
  kept.reserve(tokens.size());
  for (const std::string& token : tokens) {
    if (!stops.Contains(token)) kept.push_back(token);
  }
  return kept;
}

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kWord:
      return "word";
    case Stage::kStop:
      return "stop";
    case Stage::kStem:
      return "stem";
    case Stage::kSubword:
      return "subword";
  }
  return "?";
}

PipelineConfig::PipelineConfig(
    std::vector<Stage> stages, std::string stop_list_id,
    std::optional<std::filesystem::path> subword_model_path)
    : stages_(std::move(stages)),
      stop_list_id_(std::move(stop_list_id)),
      subword_model_path_(std::move(subword_model_path)) {
  if (stages_.empty()) throw ConfigError("pipeline has no stages");
  for (size_t i = 0; i < stages_.size(); ++i) {
    const Stage stage = stages_[i];
    if (std::count(stages_.begin(), stages_.end(), stage) > 1) {
      throw ConfigError("stage '" + std::string(StageName(stage)) +
                        "' appears more than once");
    }
    switch (stage) {
      case Stage::kWord:
        if (i != 0) throw ConfigError("'word' must be the first stage");
        break;
      case Stage::kStop:
      case Stage::kStem:
        if (stages_[0] != Stage::kWord) {
          throw ConfigError("'" + std::string(StageName(stage)) +
                            "' requires an earlier 'word' stage");
        }
        break;
      case Stage::kSubword:
        if (i + 1 != stages_.size()) {
          throw ConfigError("'subword' must be the last stage");
        }
        break;
    }
  }
  if (Has(Stage::kSubword) && !subword_model_path_) {
    throw ConfigError("'subword' stage requires a subword model path");
  }
  if (Has(Stage::kStop) && stop_list_id_.empty()) {
    throw ConfigError("'stop' stage requires a stop list");
  }
}

PipelineConfig PipelineConfig::Parse(
    std::string_view stages, std::string stop_list_id,
    std::optional<std::filesystem::path> subword_model_path) {
  std::vector<Stage> parsed;
  size_t pos = 0;
  while (pos <= stages.size()) {
    const size_t end = std::min(stages.find(',', pos), stages.size());
    const std::string_view name = Trim(stages.substr(pos, end - pos));
    pos = end + 1;
    if (name == "word") {
      parsed.push_back(Stage::kWord);
    } else if (name == "stop") {
      parsed.push_back(Stage::kStop);
    } else if (name == "stem") {
      parsed.push_back(Stage::kStem);
    } else if (name == "subword") {
      parsed.push_back(Stage::kSubword);
    } else {
      throw ConfigError("unknown pipeline stage '" + std::string(name) +
                        "' (expected word, stop, stem or subword)");
    }
  }
  return PipelineConfig(std::move(parsed), std::move(stop_list_id),
                        std::move(subword_model_path));
}

bool PipelineConfig::Has(Stage stage) const {
  return std::find(stages_.begin(), stages_.end(), stage) != stages_.end();
}

std::string PipelineConfig::ToString() const {
  std::string out;
  for (Stage stage : stages_) {
    if (!out.empty()) out += ',';
    out += StageName(stage);
  }
  return out;
}

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  LoadStopList();
  if (config_.Has(Stage::kSubword)) {
    const auto& path = *config_.subword_model_path();
    try {
      model_ = std::make_shared<const BpeModel>(LoadModel(path));
    } catch (const Error& e) {
      throw ConfigError("cannot load subword model: " + std::string(e.what()));
    }
  }
}

Pipeline::Pipeline(PipelineConfig config, std::shared_ptr<const BpeModel> model)
    : config_(std::move(config)), model_(std::move(model)) {
  LoadStopList();
  if (config_.Has(Stage::kSubword) && !model_) {
    throw ConfigError("'subword' stage requires a subword model");
  }
}

void Pipeline::LoadStopList() {
  if (!config_.Has(Stage::kStop)) return;
  try {
    stops_ = std::make_shared<const StopList>(
        StopList::Resolve(config_.stop_list_id()));
  } catch (const Error& e) {
    throw ConfigError("cannot load stop list: " + std::string(e.what()));
  }
}

TokenSequence Pipeline::Run(std::string_view text) const {
  if (config_.stages().front() == Stage::kSubword) return model_->Encode(text);
  TokenSequence tokens;
  for (Stage stage : config_.stages()) {
    switch (stage) {
      case Stage::kWord:
        tokens = WordTokenize(text);
        break;
      case Stage::kStop:
        tokens = RemoveStopWords(tokens, *stops_);
        break;
      case Stage::kStem:
        for (std::string& token : tokens) token = PorterStem(token);
        break;
      case Stage::kSubword: {
        std::string joined;
        for (const std::string& token : tokens) {
          if (!joined.empty()) joined += ' ';
          joined += token;
        }
        tokens = model_->Encode(joined);
        break;
      }
    }
  }
  return tokens;
}

TokenSequence RunPipeline(const PipelineConfig& config, std::string_view text) {
  return Pipeline(config).Run(text);
}

}  // namespace stfidf
