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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "stfidf/bpe_model.h"
#include "stfidf/bpe_trainer.h"
#include "stfidf/errors.h"
#include "stfidf/languages.h"
#include "stfidf/sampling.h"
#include "stfidf/text_pipeline.h"
#include "stfidf/vector_index.h"
#include "stfidf/xquad.h"

namespace stfidf::cli {
namespace {

namespace fs = std::filesystem;

// Flag combinations or values that parse but make no sense.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned DefaultThreads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

const CLI::Validator kCoverageRange(
    [](std::string& value) -> std::string {
      const double v = std::stod(value);
      return v > 0.0 && v <= 1.0 ? "" : "coverage must be in (0, 1]";
    },
    "(0,1]");

void CheckLanguage(const std::string& code) {
  if (!IsSupportedLanguage(code)) {
    throw UsageError("unknown language id '" + code +
                     "' (see data/languages.tsv)");
  }
}

PipelineConfig ParsePipeline(const std::string& stages,
                             const std::string& stop_list,
                             const std::string& model) {
  try {
    std::optional<fs::path> model_path;
    if (!model.empty()) model_path = fs::path(model);
    return PipelineConfig::Parse(stages, stop_list, model_path);
  } catch (const ConfigError& e) {
    throw UsageError(std::string("--pipeline: ") + e.what());
  }
}

std::string FormatScore(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", score);
  return buf;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// "doc_id<TAB>text" per line.
std::vector<std::pair<std::string, std::string>> ReadDocsTsv(const fs::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::pair<std::string, std::string>> docs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(path.string() + ":line " + std::to_string(line_no),
                       "expected '<doc_id>\\t<text>'");
    }
    docs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return docs;
}

struct TrainArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> corpora;
  std::string xquad_dir;
  std::vector<std::string> languages;
  std::string output;
  size_t vocab_size = 8000;
  double coverage = 0.9995;
  double temperature = 5.0;
  uint64_t seed = 0;
  size_t budget = 0;
};

void RunTrain(const TrainArgs& args, std::ostream& out) {
  const bool per_language = !args.corpora.empty() || !args.xquad_dir.empty();
  if (args.inputs.empty() && !per_language) {
    throw UsageError("give --input, --corpus or --xquad-dir");
  }
  if (!args.inputs.empty() && per_language) {
    throw UsageError("--input cannot be combined with --corpus/--xquad-dir");
  }

  std::string corpus;
  if (!per_language) {
    for (const std::string& input : args.inputs) {
      corpus += ReadFile(input);
      corpus += '\n';
    }
  } else {
    std::vector<LanguageCorpus> corpora;
    std::vector<std::pair<std::string, fs::path>> sources;
    for (const std::string& spec : args.corpora) {
      const size_t eq = spec.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
        throw UsageError("--corpus expects LANG=PATH, got '" + spec + "'");
      }
      CheckLanguage(spec.substr(0, eq));
      sources.emplace_back(spec.substr(0, eq), fs::path(spec.substr(eq + 1)));
    }
    corpora = ReadLanguageCorpora(sources);
    if (!args.xquad_dir.empty()) {
      const std::vector<std::string>& languages =
          args.languages.empty() ? XquadLanguages() : args.languages;
      for (const std::string& language : languages) {
        CheckLanguage(language);
        const XquadSplit split =
            LoadXquad(fs::path(args.xquad_dir) / ("xquad." + language + ".json"));
        LanguageCorpus c{language, {}};
        for (const Paragraph& p : split.paragraphs) c.lines.push_back(p.context);
        corpora.push_back(std::move(c));
      }
    }
    std::vector<LanguageStats> stats;
    size_t total_lines = 0;
    for (const LanguageCorpus& c : corpora) {
      stats.push_back(MeasureCorpus(c));
      total_lines += c.lines.size();
    }
    const SamplingWeights weights = ComputeSamplingWeights(stats, args.temperature);
    for (size_t i = 0; i < weights.languages.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6f", weights.probabilities[i]);
      out << "weight\t" << weights.languages[i] << '\t' << buf << '\n';
    }
    const size_t budget = args.budget > 0 ? args.budget : total_lines;
    for (const std::string& line :
         SampleTrainingCorpus(corpora, weights, budget, args.seed)) {
      corpus += line;
      corpus += '\n';
    }
  }

  const BpeModel model =
      TrainBpe(corpus, {.vocab_size = args.vocab_size, .coverage = args.coverage});
  SaveModel(model, args.output);
  out << "alphabet\t" << model.alphabet().size() << '\n'
      << "merges\t" << model.merges().size() << '\n'
      << "pieces\t" << model.pieces().size() << '\n';
}

struct IndexArgs {
  std::string docs;
  std::string xquad;
  std::string pipeline = "word";
  std::string model;
  std::string stop_list = std::string(StopList::kDefaultId);
  std::string output;
  unsigned threads = DefaultThreads();
};

void RunBuildIndex(const IndexArgs& args, std::ostream& out) {
  if (args.docs.empty() == args.xquad.empty()) {
    throw UsageError("give exactly one of --docs or --xquad");
  }
  std::string model = args.model;
  if (!model.empty()) model = fs::absolute(model).lexically_normal().string();
  const PipelineConfig config = ParsePipeline(args.pipeline, args.stop_list, model);
  const Pipeline pipeline(config);

  std::vector<std::pair<std::string, std::string>> texts;
  if (!args.docs.empty()) {
    texts = ReadDocsTsv(args.docs);
  } else {
    for (Paragraph& p : LoadXquad(args.xquad).paragraphs) {
      texts.emplace_back(std::move(p.id), std::move(p.context));
    }
  }
  std::vector<Index::Document> docs;
  docs.reserve(texts.size());
  for (auto& [id, text] : texts) docs.push_back({id, pipeline.Run(text)});
  Index index = Index::Build(std::move(docs), args.threads);
  index.SetMetadata("pipeline", config.ToString());
  index.SetMetadata("stop_list", config.stop_list_id());
  if (!model.empty()) index.SetMetadata("model", model);
  index.Save(args.output);
  out << "documents\t" << index.num_documents() << '\n'
      << "vocabulary\t" << index.vocabulary().size() << '\n';
}

struct QueryArgs {
  std::string index;
  std::string text;
  size_t k = 10;
  std::string model;
};

void RunQuery(const QueryArgs& args, std::ostream& out) {
  const Index index = Index::Load(args.index);
  const auto& meta = index.metadata();
  auto value = [&meta](const std::string& key) -> std::string {
    auto it = meta.find(key);
    return it == meta.end() ? "" : it->second;
  };
  const std::string stages = value("pipeline").empty() ? "word" : value("pipeline");
  const std::string stop_list =
      value("stop_list").empty() ? std::string(StopList::kDefaultId) : value("stop_list");
  const std::string model = args.model.empty() ? value("model") : args.model;
  PipelineConfig config = [&] {
    try {
      return PipelineConfig::Parse(stages, stop_list,
                                   model.empty() ? std::nullopt
                                                 : std::optional<fs::path>(model));
    } catch (const ConfigError& e) {
      throw ConfigError(args.index + ": stored pipeline is unusable: " + e.what());
    }
  }();
  const Pipeline pipeline(std::move(config));
  for (const ScoredDocument& hit : index.Query(pipeline.Run(args.text), args.k)) {
    out << index.doc_id(hit.doc) << '\t' << FormatScore(hit.score) << '\n';
  }
}

struct EvaluateArgs {
  std::vector<std::string> data;
  std::string data_dir;
  std::vector<std::string> languages;
  std::vector<std::string> pipelines;
  std::string model;
  std::string stop_list = std::string(StopList::kDefaultId);
  std::string report_format = "tsv";
  unsigned threads = DefaultThreads();
};

void RunEvaluate(const EvaluateArgs& args, std::ostream& out) {
  if (args.data.empty() == args.data_dir.empty()) {
    throw UsageError("give exactly one of --data or --data-dir");
  }
  if (!args.languages.empty() && args.data_dir.empty()) {
    throw UsageError("--languages requires --data-dir");
  }
  std::vector<PipelineConfig> configs;
  const std::vector<std::string> stages =
      args.pipelines.empty() ? std::vector<std::string>{"word"} : args.pipelines;
  for (const std::string& s : stages) {
    configs.push_back(ParsePipeline(s, args.stop_list, args.model));
  }
  const EvalOptions options{.threads = args.threads};

  std::vector<EvalResult> results;
  if (!args.data_dir.empty()) {
    const std::vector<std::string>& languages =
        args.languages.empty() ? XquadLanguages() : args.languages;
    for (const std::string& language : languages) CheckLanguage(language);
    results = RunAblationSuite(args.data_dir, configs, languages, options);
  } else {
    std::vector<XquadSplit> splits;
    for (const std::string& path : args.data) splits.push_back(LoadXquad(path));
    for (const PipelineConfig& config : configs) {
      const Pipeline pipeline(config);
      for (const XquadSplit& split : splits) {
        results.push_back(Evaluate(split, pipeline, options));
      }
    }
  }
  out << RenderReport(results, args.report_format == "table" ? ReportFormat::kTable
                                                              : ReportFormat::kTsv);
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subword and word-level TF-IDF retrieval with an XQuAD harness",
               "stfidf"};
  app.require_subcommand(1);
  app.fallthrough(false);

  TrainArgs train;
  CLI::App* train_cmd =
      app.add_subcommand("train-subword", "Train a BPE subword model");
  train_cmd->add_option("--input", train.inputs, "Plain-text training file(s)");
  train_cmd->add_option("--corpus", train.corpora,
                        "Per-language corpus LANG=PATH, one text per line");
  train_cmd->add_option("--xquad-dir", train.xquad_dir,
                        "Use XQuAD contexts of --languages as per-language corpora");
  train_cmd->add_option("--languages", train.languages,
                        "Languages read from --xquad-dir (default: all twelve)")
      ->delimiter(',');
  train_cmd->add_option("--output", train.output, "Model file to write")->required();
  train_cmd->add_option("--vocab-size", train.vocab_size, "Target vocabulary size")
      ->check(CLI::Range(size_t{2}, std::numeric_limits<size_t>::max()))
      ->capture_default_str();
  train_cmd->add_option("--coverage", train.coverage, "Character coverage")
      ->check(kCoverageRange)
      ->capture_default_str();
  train_cmd->add_option("--temperature", train.temperature, "Sampling temperature T")
      ->check(CLI::Range(1.0, std::numeric_limits<double>::max()))
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Sampling seed")->capture_default_str();
  train_cmd->add_option("--budget", train.budget,
                        "Lines to sample (default: total lines of all corpora)");

  std::string vocab_path, vocab_output;
  CLI::App* import_cmd = app.add_subcommand(
      "import-vocab", "Convert an external piece list into a longest-match model");
  import_cmd->add_option("--vocab", vocab_path, "Piece list, one per line")->required();
  import_cmd->add_option("--output", vocab_output, "Model file to write")->required();

  IndexArgs index;
  CLI::App* index_cmd = app.add_subcommand("build-index", "Build a TF-IDF index");
  index_cmd->add_option("--docs", index.docs, "TSV of doc_id<TAB>text");
  index_cmd->add_option("--xquad", index.xquad, "Index the paragraphs of an XQuAD file");
  index_cmd->add_option("--pipeline", index.pipeline, "Stages, e.g. word,stop,stem")
      ->capture_default_str();
  index_cmd->add_option("--model", index.model, "Subword model for the subword stage");
  index_cmd->add_option("--stop-list", index.stop_list, "Stop list id or path")
      ->capture_default_str();
  index_cmd->add_option("--output", index.output, "Index file to write")->required();
  index_cmd->add_option("--threads", index.threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  QueryArgs query;
  CLI::App* query_cmd = app.add_subcommand("query", "Rank indexed documents");
  query_cmd->add_option("--index", query.index, "Index file")->required();
  query_cmd->add_option("--text", query.text, "Query text")->required();
  query_cmd->add_option("--k", query.k, "Number of results")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  query_cmd->add_option("--model", query.model, "Override the stored model path");

  EvaluateArgs eval;
  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Paragraph-retrieval accuracy on XQuAD files");
  eval_cmd->add_option("--data", eval.data, "xquad.<lang>.json file(s)");
  eval_cmd->add_option("--data-dir", eval.data_dir, "Directory of xquad.<lang>.json");
  eval_cmd->add_option("--languages", eval.languages, "Languages under --data-dir")
      ->delimiter(',');
  eval_cmd->add_option("--pipeline", eval.pipelines,
                       "Stages; repeat the flag to evaluate several pipelines");
  eval_cmd->add_option("--model", eval.model, "Subword model for the subword stage");
  eval_cmd->add_option("--stop-list", eval.stop_list, "Stop list id or path")
      ->capture_default_str();
  eval_cmd->add_option("--report-format", eval.report_format, "tsv or table")
      ->check(CLI::IsMember({"tsv", "table"}))
      ->capture_default_str();
  eval_cmd->add_option("--threads", eval.threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;  // --help
    for (CLI::App* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kUsageError;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == train_cmd) {
      RunTrain(train, out);
    } else if (active == import_cmd) {
      const BpeModel model = ImportExternalVocab(fs::path(vocab_path));
      SaveModel(model, vocab_output);
      out << "pieces\t" << model.pieces().size() << '\n';
    } else if (active == index_cmd) {
      RunBuildIndex(index, out);
    } else if (active == query_cmd) {
      RunQuery(query, out);
    } else if (active == eval_cmd) {
      RunEvaluate(eval, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

}  // namespace stfidf::cli
