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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.h"

namespace stfidf {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "stfidf");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::WriteFile(dir_ / "docs.tsv",
                       "d1\tThe cat sat on the mat\n"
                       "d2\tDogs are running in the park\n"
                       "d3\tRelational databases store tables\n"
                       "d4\tA cat and a dog\n");
    testing::WriteFile(dir_ / "xquad.en.json",
                       testing::MakeSquadJson(testing::EnglishFixture()));
    testing::WriteFile(dir_ / "en.txt", "the lower lowest newer newest\nwider lower low\n");
    testing::WriteFile(dir_ / "de.txt", "der niedrige neue neueste\nbreiter\n");
  }
  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  testing::TempDir dir_;
};

TEST_F(CliTest, BuildIndexAndQuery) {
  const Outcome built = Invoke({"build-index", "--docs", P("docs.tsv"), "--pipeline",
                             "word,stop,stem", "--output", P("i.idx")});
  ASSERT_EQ(built.code, 0) << built.err;
  EXPECT_TRUE(built.err.empty());
  const Outcome q = Invoke({"query", "--index", P("i.idx"), "--text", "cats", "--k", "3"});
  ASSERT_EQ(q.code, 0) << q.err;
  // Hand-computed: idf(cat) = idf(dog) = ln(5/3) + 1, idf(sat) = idf(mat) = ln(5/2) + 1.
  EXPECT_EQ(q.out, "d4\t0.707107\nd1\t0.486934\n");
  EXPECT_TRUE(q.err.empty());
  const Outcome one = Invoke({"query", "--index", P("i.idx"), "--text", "cat dog", "--k", "1"});
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 1);
  const Outcome none = Invoke({"query", "--index", P("i.idx"), "--text", "zebra"});
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(none.out, "");
}

TEST_F(CliTest, UsageErrorsExitOne) {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"query", "--index", P("i.idx")},
           {"query", "--index", P("i.idx"), "--text", "a", "--k", "0"},
           {"build-index", "--docs", P("docs.tsv")},
           {"build-index", "--docs", P("docs.tsv"), "--output", P("o"), "--bogus"},
           {"build-index", "--docs", P("docs.tsv"), "--output", P("o"), "--pipeline",
            "stem,word"},
           {"build-index", "--docs", P("docs.tsv"), "--xquad", P("xquad.en.json"),
            "--output", P("o")},
           {"train-subword", "--input", P("en.txt"), "--output", P("m"), "--coverage", "0"},
           {"train-subword", "--input", P("en.txt"), "--output", P("m"), "--coverage",
            "1.5"},
           {"train-subword", "--corpus", "en=" + P("en.txt"), "--output", P("m"),
            "--temperature", "0.5"},
           {"train-subword", "--corpus", "qq=" + P("en.txt"), "--output", P("m")},
           {"evaluate", "--data", P("xquad.en.json"), "--report-format", "xml"},
       }) {
    const Outcome o = Invoke(args);
    std::string joined;
    for (const std::string& a : args) joined += a + " ";
    EXPECT_EQ(o.code, 1) << joined << "\n" << o.err;
    EXPECT_FALSE(o.err.empty()) << joined;
    EXPECT_TRUE(o.out.empty()) << joined;
  }
}

TEST_F(CliTest, MissingRequiredFlagPrintsUsage) {
  const Outcome o = Invoke({"query", "--text", "x"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("--index"), std::string::npos);
  EXPECT_NE(o.err.find("Usage"), std::string::npos);
}

TEST_F(CliTest, DataErrorsExitTwo) {
  EXPECT_EQ(Invoke({"query", "--index", P("missing.idx"), "--text", "x"}).code, 2);
  testing::WriteFile(dir_ / "dup.tsv", "a\tx\na\ty\n");
  EXPECT_EQ(Invoke({"build-index", "--docs", P("dup.tsv"), "--output", P("o")}).code, 2);
  testing::WriteFile(dir_ / "notab.tsv", "no tab here\n");
  EXPECT_EQ(Invoke({"build-index", "--docs", P("notab.tsv"), "--output", P("o")}).code, 2);
  EXPECT_EQ(Invoke({"build-index", "--docs", P("docs.tsv"), "--pipeline", "subword",
                 "--model", P("nope.bpe"), "--output", P("o")})
                .code,
            2);
  testing::WriteFile(dir_ / "empty.txt", "\n");
  EXPECT_EQ(Invoke({"import-vocab", "--vocab", P("empty.txt"), "--output", P("v")}).code, 2);
  EXPECT_EQ(Invoke({"evaluate", "--data", P("xquad.xx.json")}).code, 2);
}

TEST_F(CliTest, TrainSubwordAndUseModel) {
  const Outcome t = Invoke({"train-subword", "--corpus", "en=" + P("en.txt"), "--corpus",
                         "de=" + P("de.txt"), "--vocab-size", "40", "--seed", "3",
                         "--output", P("m.bpe")});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("weight\ten\t"), std::string::npos);
  EXPECT_NE(t.out.find("merges\t"), std::string::npos);
  const Outcome b = Invoke({"build-index", "--docs", P("docs.tsv"), "--pipeline", "subword",
                         "--model", P("m.bpe"), "--output", P("s.idx")});
  ASSERT_EQ(b.code, 0) << b.err;
  const Outcome q = Invoke({"query", "--index", P("s.idx"), "--text", "lowest cat"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_FALSE(q.out.empty());
}

TEST_F(CliTest, ImportVocab) {
  testing::WriteFile(dir_ / "v.txt", "\xE2\x96\x81" "cat\t-1\nsat\t-2\ns\nat\nsat\n");
  const Outcome o = Invoke({"import-vocab", "--vocab", P("v.txt"), "--output", P("v.bpe")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "pieces\t5\n");
}

TEST_F(CliTest, EvaluateReports) {
  const Outcome o = Invoke({"evaluate", "--data", P("xquad.en.json"), "--pipeline", "word",
                         "--pipeline", "word,stop,stem", "--threads", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out,
            "language\tpipeline\tcorrect\ttotal\taccuracy\n"
            "en\tword\t8\t8\t100.0\n"
            "en\tword,stop,stem\t8\t8\t100.0\n");
  const Outcome dir = Invoke({"evaluate", "--data-dir", dir_.path().string(), "--languages",
                           "en", "--report-format", "table"});
  ASSERT_EQ(dir.code, 0) << dir.err;
  EXPECT_NE(dir.out.find("100.0"), std::string::npos);
}

TEST_F(CliTest, HelpExitsZero) {
  const Outcome o = Invoke({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("build-index"), std::string::npos);
}

TEST_F(CliTest, IdenticalRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"train-subword", "--corpus", "en=" + P("en.txt"), "--corpus", "de=" + P("de.txt"),
       "--vocab-size", "40", "--seed", "9", "--budget", "50", "--output", P("m.bpe")},
      {"build-index", "--docs", P("docs.tsv"), "--pipeline", "word,stem", "--output",
       P("i.idx"), "--threads", "3"},
      {"query", "--index", P("i.idx"), "--text", "cat running", "--k", "4"},
      {"evaluate", "--data", P("xquad.en.json"), "--pipeline", "word,stop"},
  };
  for (const auto& args : commands) {
    const Outcome a = Invoke(args);
    const std::string file_a = args[0] == "train-subword" ? testing::ReadFile(P("m.bpe"))
                               : args[0] == "build-index" ? testing::ReadFile(P("i.idx"))
                                                          : "";
    const Outcome b = Invoke(args);
    const std::string file_b = args[0] == "train-subword" ? testing::ReadFile(P("m.bpe"))
                               : args[0] == "build-index" ? testing::ReadFile(P("i.idx"))
                                                          : "";
    ASSERT_EQ(a.code, 0) << args[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
    EXPECT_EQ(file_a, file_b) << args[0];
  }
}

}  // namespace
}  // namespace stfidf
