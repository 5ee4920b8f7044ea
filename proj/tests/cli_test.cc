// Copyright 2026 The composeqa Authors.
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

#include "cqa/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cqa/answer.h"
#include "cqa/text.h"

namespace cqa {
namespace {

namespace fs = std::filesystem;

const std::string kTestData = CQA_TEST_DATA;
const std::string kKb = std::string(CQA_DATA_DIR) + "/kb.tsv";

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun Cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  CliRun r;
  r.code = RunCli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string ReplaceAll(std::string s, const std::string& from, const std::string& to) {
  for (size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) {
    s.replace(at, from.size(), to);
  }
  return s;
}

fs::path TempDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("cqa_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Ask, PrintsTheValue) {
  CliRun r = Cli({"ask", "--scene", kTestData + "/dogs_scoping.json", "--kb", kKb, "Are", "all", "black",
               "dogs", "small?"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "yes\n");
}

TEST(Ask, LimitationAnswersExitZero) {
  CliRun r = Cli({"ask", "--scene", kTestData + "/room.json", "--kb", kKb, "Is the screen on?"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "unknown property 'on'\n");
  // Without the knowledge file "screen" has no link to a detector class.
  r = Cli({"ask", "--scene", kTestData + "/room.json", "Is the screen on?"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Unknown class: screen\n");
}

TEST(Ask, MissingSceneIsAFileError) {
  CliRun r = Cli({"ask", "--scene", kTestData + "/nope.json", "Is there a dog?"});
  EXPECT_EQ(r.code, kExitFileError);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("nope.json"), std::string::npos) << r.err;
}

TEST(Ask, BadKnowledgeFileIsAFileError) {
  fs::path dir = TempDir("kb");
  WriteFile((dir / "kb.tsv").string(), "dog\tIsA\n");
  CliRun r = Cli({"ask", "--scene", kTestData + "/room.json", "--kb", (dir / "kb.tsv").string(), "Is there a dog?"});
  EXPECT_EQ(r.code, kExitFileError);
}

TEST(Ask, UnparsableQuestionIsAParseError) {
  CliRun r = Cli({"ask", "--scene", kTestData + "/room.json", "Colorless green ideas sleep furiously"});
  EXPECT_EQ(r.code, kExitParseError);
  EXPECT_NE(r.err.find("parse error"), std::string::npos) << r.err;
}

TEST(Ask, UsageErrorsAreNonzero) {
  EXPECT_EQ(Cli({"ask", "Is there a dog?"}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"ask", "--scene", kTestData + "/room.json", "--format", "xml", "Is there a dog?"}).code,
            kExitUsage);
  CliRun help = Cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("Subcommands:"), std::string::npos);
}

TEST(Ask, JsonOutputParsesBack) {
  CliRun r = Cli({"ask", "--scene", kTestData + "/dogs_scoping.json", "--kb", kKb, "--format", "json", "--trace",
               "Are all dogs small and black?"});
  ASSERT_EQ(r.code, 0) << r.err;
  Answer a = AnswerFromJson(r.out);
  EXPECT_EQ(a.value, "no");
  EXPECT_FALSE(a.trace.empty());
  EXPECT_EQ(AnswerToJson(a) + "\n", r.out);
}

TEST(Ask, DumpGraphPrecedesTheAnswer) {
  CliRun r = Cli({"ask", "--scene", kTestData + "/dogs_scoping.json", "--dump-graph", "Are all black dogs small?"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("node 1 c=dog", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("target existence\nyes\n"), std::string::npos) << r.out;
}

TEST(Ask, FlagsSelectSections) {
  std::vector<std::string> base = {"ask", "--scene", kTestData + "/bus_only.json", "--kb", kKb, "Is there a train?"};
  EXPECT_EQ(Cli(base).out, "There is no train\n  ~ There is a bus\n");
  auto quiet = base;
  quiet.insert(quiet.begin() + 1, "--no-alternatives");
  EXPECT_EQ(Cli(quiet).out, "There is no train\n");
}

TEST(Repl, GoldenTranscript) {
  std::string script = ReplaceAll(ReadFile(kTestData + "/repl_script.txt"), "@DATA@", kTestData);
  CliRun r = Cli({"repl", "--scene", kTestData + "/dogs_scoping.json", "--kb", kKb, "--explain"}, script);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(ReplaceAll(r.out, kTestData, "@DATA@"), ReadFile(kTestData + "/repl_golden.txt"));
}

TEST(Batch, FixturePairsAgree) {
  CliRun r = Cli({"batch", kTestData + "/batch_pairs.tsv", "--kb", kKb});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1\tno\tok\n2\tyes\tok\n3\t6\tok\nanswered 3, errors 0\nagreement 3/3\n");
}

TEST(Batch, MalformedLinesAreSkipped) {
  fs::path dir = TempDir("batch");
  fs::copy_file(kTestData + "/bus_only.json", dir / "bus.json");
  WriteFile((dir / "pairs.tsv").string(),
            "bus.json\tIs there a bus?\tyes\n"
            "just one field\n"
            "bus.json\tIs there a train?\tyes\n"
            "absent.json\tIs there a bus?\n");
  CliRun r = Cli({"batch", (dir / "pairs.tsv").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "1\tyes\tok\n3\tThere is no train\tMISMATCH expected: yes\nanswered 2, errors 2\n"
            "agreement 1/2\n");
  EXPECT_NE(r.err.find("line 2: expected scene<TAB>question[<TAB>expected], skipped"), std::string::npos)
      << r.err;
  EXPECT_NE(r.err.find("line 4: "), std::string::npos) << r.err;
}

TEST(Gen, DeterministicAndSelfConsistent) {
  fs::path a = TempDir("gen_a"), b = TempDir("gen_b");
  for (const fs::path& dir : {a, b}) {
    CliRun r = Cli({"gen", "--seed", "42", "--out-dir", dir.string(), "--kb", kKb, "--scenes", "4", "--questions", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  for (const char* name : {"scene_0000.json", "scene_0003.json", "pairs.tsv"}) {
    EXPECT_EQ(ReadFile((a / name).string()), ReadFile((b / name).string())) << name;
  }
  EXPECT_EQ(SplitLines(ReadFile((a / "pairs.tsv").string())).size(), 20u);
  // The expectations come from the oracle; the engine must agree.
  CliRun r = Cli({"batch", (a / "pairs.tsv").string(), "--kb", kKb});
  EXPECT_NE(r.out.find("agreement 20/20"), std::string::npos) << r.out;
  CliRun other = Cli({"gen", "--seed", "43", "--out-dir", b.string(), "--scenes", "4", "--questions", "5"});
  ASSERT_EQ(other.code, 0);
  EXPECT_NE(ReadFile((a / "pairs.tsv").string()), ReadFile((b / "pairs.tsv").string()));
}

}  // namespace
}  // namespace cqa
