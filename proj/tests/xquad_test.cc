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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "stfidf/errors.h"
#include "stfidf/vector_index.h"
#include "test_util.h"

namespace stfidf {
namespace {

using testing::FixtureParagraph;

XquadSplit Fixture() {
  return ParseXquad(testing::MakeSquadJson(testing::EnglishFixture()), "en");
}

// Synthetic split with `paragraphs` random contexts; each question quotes a
// few words of its paragraph plus noise.
XquadSplit RandomSplit(std::mt19937_64& rng, int paragraphs, int questions_each) {
  std::vector<FixtureParagraph> article;
  for (int p = 0; p < paragraphs; ++p) {
    std::vector<std::string> words;
    for (int w = 0; w < 40; ++w) words.push_back(testing::RandomWord(rng, 2, 6, 10));
    std::string context;
    for (const std::string& w : words) context += w + (rng() % 5 ? " " : ", ");
    FixtureParagraph fp{context, {}};
    for (int q = 0; q < questions_each; ++q) {
      std::string question;
      for (int k = 0; k < 4; ++k) question += words[rng() % words.size()] + " ";
      question += testing::RandomWord(rng, 2, 6, 10) + "?";
      fp.questions.push_back(question);
    }
    article.push_back(fp);
  }
  return ParseXquad(testing::MakeSquadJson({article}), "xx");
}

TEST(ParseXquadTest, LoadsParagraphsAndGold) {
  const XquadSplit split = Fixture();
  EXPECT_EQ(split.language, "en");
  ASSERT_EQ(split.paragraphs.size(), 5u);
  ASSERT_EQ(split.questions.size(), 8u);
  EXPECT_EQ(split.paragraphs[0].id, "0-0");
  EXPECT_EQ(split.paragraphs[3].id, "1-1");
  EXPECT_EQ(split.questions[0].gold, 0u);
  EXPECT_EQ(split.questions[2].gold, 1u);
  EXPECT_EQ(split.questions[7].gold, 4u);
  EXPECT_EQ(split.questions[7].text, "What does photosynthesis produce from sunlight?");
  for (const Question& q : split.questions) EXPECT_LT(q.gold, split.paragraphs.size());
}

TEST(ParseXquadTest, MinimalFixture) {
  const XquadSplit split =
      ParseXquad(testing::MakeSquadJson({{{"Only one context.", {"one?"}}}}), "en");
  ASSERT_EQ(split.paragraphs.size(), 1u);
  ASSERT_EQ(split.questions.size(), 1u);
  EXPECT_EQ(split.questions[0].gold, 0u);
}

TEST(ParseXquadTest, SchemaErrorsCarryJsonPath) {
  const auto expect_path = [](const std::string& json, const std::string& path) {
    try {
      ParseXquad(json, "en");
      ADD_FAILURE() << "expected ParseError for " << json;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.where(), path) << e.what();
    }
  };
  expect_path("{not json", "$");
  expect_path(R"({"version": "1.1"})", "$.data");
  expect_path(R"({"data": [{"paragraphs": [{"qas": []}]}]})",
              "data[0].paragraphs[0].context");
  expect_path(R"({"data": [{"paragraphs": [{"context": "c", "qas": [{"question": "q"}]}]}]})",
              "data[0].paragraphs[0].qas[0].id");
  expect_path(R"({"data": [{"paragraphs": [], "qas": [{"id": "1", "question": "q"}]}]})",
              "data[0].qas");
  expect_path(R"({"data": [{"paragraphs": [{"context": 5, "qas": []}]}]})",
              "data[0].paragraphs[0].context");
}

TEST(LoadXquadTest, LanguageFromFileName) {
  testing::TempDir dir;
  testing::WriteFile(dir / "xquad.de.json", testing::MakeSquadJson({{{"Hallo Welt.", {"Welt?"}}}}));
  EXPECT_EQ(LoadXquad(dir / "xquad.de.json").language, "de");
  EXPECT_THROW(LoadXquad(dir / "xquad.fr.json"), IoError);
  testing::WriteFile(dir / "xquad.es.json", "[]");
  EXPECT_THROW(LoadXquad(dir / "xquad.es.json"), ParseError);
}

TEST(EvaluateTest, FixtureIsRetrievedPerfectly) {
  const XquadSplit split = Fixture();
  const EvalResult r = Evaluate(split, PipelineConfig::Parse("word"));
  EXPECT_EQ(r.language, "en");
  EXPECT_EQ(r.pipeline, "word");
  EXPECT_EQ(r.total, 8u);
  EXPECT_EQ(r.correct, 8u);
  EXPECT_DOUBLE_EQ(r.accuracy(), 1.0);
}

TEST(EvaluateTest, SingleParagraphAlwaysCorrectWhenTokensShared) {
  const XquadSplit split = ParseXquad(
      testing::MakeSquadJson({{{"Paris is the capital of France.",
                                {"capital?", "What about paris", "France"}}}}),
      "en");
  EXPECT_EQ(Evaluate(split, PipelineConfig::Parse("word")).correct, 3u);
}

TEST(EvaluateTest, EmptyQueryCountsAsMiss) {
  const XquadSplit split = ParseXquad(
      testing::MakeSquadJson({{{"Cats purr.", {"the of and", "cats"}}}}), "en");
  const EvalResult r = Evaluate(split, PipelineConfig::Parse("word,stop"));
  EXPECT_EQ(r.total, 2u);
  EXPECT_EQ(r.correct, 1u);
  EXPECT_EQ(r.per_question, (std::vector<bool>{false, true}));
}

TEST(EvaluateTest, RecountAndDeterminism) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const XquadSplit split = RandomSplit(rng, 30, 4);
    const Pipeline pipeline(PipelineConfig::Parse("word"));
    const EvalResult a = Evaluate(split, pipeline, {.threads = 1});
    const EvalResult b = Evaluate(split, pipeline, {.threads = 4});
    EXPECT_EQ(a.per_question, b.per_question);
    EXPECT_EQ(a.correct, b.correct);
    ASSERT_EQ(a.per_question.size(), split.questions.size());
    EXPECT_EQ(static_cast<size_t>(
                  std::count(a.per_question.begin(), a.per_question.end(), true)),
              a.correct);
    EXPECT_LE(a.correct, a.total);
  }
}

TEST(EvaluateTest, ParagraphOrderIrrelevantWithoutTies) {
  std::mt19937_64 rng(19);
  const XquadSplit split = RandomSplit(rng, 40, 3);
  const Pipeline pipeline(PipelineConfig::Parse("word"));

  // Confirm the corpus is tie-free at rank 1 for every question.
  std::vector<Index::Document> docs;
  for (const Paragraph& p : split.paragraphs) docs.push_back({p.id, pipeline.Run(p.context)});
  const Index index = Index::Build(docs);
  for (const Question& q : split.questions) {
    const auto hits = index.Query(pipeline.Run(q.text), 2);
    ASSERT_FALSE(hits.empty());
    if (hits.size() == 2) ASSERT_GT(hits[0].score - hits[1].score, 1e-9) << q.text;
  }

  const EvalResult base = Evaluate(split, pipeline);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<uint32_t> order(split.paragraphs.size());
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<uint32_t> where(order.size());
    XquadSplit shuffled = split;
    for (size_t i = 0; i < order.size(); ++i) {
      shuffled.paragraphs[i] = split.paragraphs[order[i]];
      where[order[i]] = static_cast<uint32_t>(i);
    }
    for (Question& q : shuffled.questions) q.gold = where[q.gold];
    EXPECT_EQ(Evaluate(shuffled, pipeline).per_question, base.per_question);
  }
}

TEST(EvaluateTest, WordAccuracyIgnoresExtraWhitespace) {
  std::mt19937_64 rng(23);
  const XquadSplit split = RandomSplit(rng, 30, 3);
  XquadSplit spaced = split;
  for (Paragraph& p : spaced.paragraphs) {
    std::string wide;
    for (char c : p.context) wide += c == ' ' ? std::string(" \t  ") : std::string(1, c);
    p.context = "  " + wide + "\n";
  }
  const PipelineConfig config = PipelineConfig::Parse("word");
  EXPECT_EQ(Evaluate(spaced, config).per_question, Evaluate(split, config).per_question);
}

TEST(AblationSuiteTest, CartesianProductInOrder) {
  testing::TempDir dir;
  testing::WriteFile(dir / "xquad.en.json", testing::MakeSquadJson(testing::EnglishFixture()));
  testing::WriteFile(dir / "xquad.de.json",
                     testing::MakeSquadJson({{{"Der Hund schl\xC3\xA4" "ft.", {"Hund?"}},
                                              {"Die Katze l\xC3\xA4uft.", {"Katze?"}}}}));
  const std::vector<PipelineConfig> configs = {PipelineConfig::Parse("word"),
                                               PipelineConfig::Parse("word,stem")};
  const std::vector<std::string> languages = {"en", "de"};
  const auto results = RunAblationSuite(dir.path(), configs, languages);
  ASSERT_EQ(results.size(), 4u);
  EXPECT_EQ(results[0].pipeline, "word");
  EXPECT_EQ(results[0].language, "en");
  EXPECT_EQ(results[1].language, "de");
  EXPECT_EQ(results[2].pipeline, "word,stem");
  EXPECT_EQ(results[3].language, "de");
  EXPECT_EQ(results[1].correct, 2u);

  EXPECT_TRUE(RunAblationSuite(dir.path(), {}, languages).empty());
  const std::vector<std::string> missing = {"en", "fr"};
  try {
    RunAblationSuite(dir.path(), configs, missing);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("xquad.fr.json"), std::string::npos);
  }
}

TEST(ReportTest, AccuracyRounding) {
  EXPECT_EQ(FormatAccuracy(0.8542), "85.4");
  EXPECT_EQ(FormatAccuracy(1.0), "100.0");
  EXPECT_EQ(FormatAccuracy(0.0), "0.0");
  EXPECT_EQ(FormatAccuracy(1002.0 / 1190.0), "84.2");
}

TEST(ReportTest, TsvAndTable) {
  std::vector<EvalResult> results(2);
  results[0] = {"en", "word", 1002, 1190, {}};
  results[1] = {"es", "word,stop,stem", 1, 3, {}};
  EXPECT_EQ(RenderReport(results, ReportFormat::kTsv),
            "language\tpipeline\tcorrect\ttotal\taccuracy\n"
            "en\tword\t1002\t1190\t84.2\n"
            "es\tword,stop,stem\t1\t3\t33.3\n");
  const std::string table = RenderReport(results, ReportFormat::kTable);
  EXPECT_NE(table.find("84.2"), std::string::npos);
  EXPECT_NE(table.find("33.3"), std::string::npos);
  EXPECT_LT(table.find("en "), table.find("es "));
  // Columns line up: every row has the same width.
  std::vector<size_t> widths;
  size_t start = 0;
  for (size_t end; (end = table.find('\n', start)) != std::string::npos; start = end + 1) {
    widths.push_back(end - start);
  }
  ASSERT_GE(widths.size(), 3u);
  for (size_t w : widths) EXPECT_EQ(w, widths[0]);
}

TEST(ReportTest, EmptyResultsHeaderOnly) {
  EXPECT_EQ(RenderReport({}, ReportFormat::kTsv),
            "language\tpipeline\tcorrect\ttotal\taccuracy\n");
  const std::string table = RenderReport({}, ReportFormat::kTable);
  EXPECT_NE(table.find("language"), std::string::npos);
  EXPECT_EQ(table.find("word"), std::string::npos);
}

}  // namespace
}  // namespace stfidf
