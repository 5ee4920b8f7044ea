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

// The shipped question corpus: every question parses to its stored graph,
// and together the questions cover the grammar.

#include <gtest/gtest.h>

#include <filesystem>

#include "corpus_check.h"
#include "cqa/qgraph.h"

namespace cqa {
namespace {

using testing::CheckCorpus;
using testing::CorpusReport;
using testing::LoadCorpus;

const std::string kCorpus = std::string(CQA_DATA_DIR) + "/corpus";

TEST(Corpus, EveryQuestionParsesToItsStoredGraph) {
  auto corpus = LoadCorpus(kCorpus);
  ASSERT_GE(corpus.size(), 40u);
  for (const auto& e : corpus) {
    QuestionGraph g;
    ASSERT_NO_THROW(g = GraphFromQuestion(e.question)) << e.question;
    std::string stored = ReadFile(e.graph_path);
    EXPECT_EQ(Serialize(g), stored) << e.question;
    EXPECT_EQ(DeserializeGraph(stored), g) << e.question;
  }
}

TEST(Corpus, LabelsMatchTargets) {
  CorpusReport r = CheckCorpus(kCorpus);
  EXPECT_TRUE(r.label_errors.empty()) << r.label_errors.front();
  EXPECT_EQ(r.templates.size(), testing::CorpusTemplates().size());
}

TEST(Corpus, CoversGroupsAndRelationCategories) {
  CorpusReport r = CheckCorpus(kCorpus);
  for (const std::string& gap : r.MissingCoverage()) ADD_FAILURE() << "missing " << gap;
  EXPECT_TRUE(r.Ok());
}

TEST(Corpus, CoversFunctionsQuantifiersAndSizes) {
  std::set<std::string> functions, set_functions, quantifiers;
  std::set<size_t> sizes;
  for (const auto& e : LoadCorpus(kCorpus)) {
    QuestionGraph g = GraphFromQuestion(e.question);
    sizes.insert(g.nodes.size());
    for (const ObjectNode& n : g.nodes) {
      functions.insert(n.property_queries.begin(), n.property_queries.end());
      set_functions.insert(n.set_queries.begin(), n.set_queries.end());
      quantifiers.insert(ToString(n.quantifier).substr(0, 7));
    }
  }
  for (const char* f : {"color", "colors", "size", "age", "gender", "location", "type"}) {
    EXPECT_TRUE(functions.count(f)) << f;
  }
  EXPECT_EQ(set_functions, (std::set<std::string>{"quantity", "difference", "similarity"}));
  EXPECT_EQ(quantifiers, (std::set<std::string>{"all", "atleast", "exists"}));
  EXPECT_EQ(sizes, (std::set<size_t>{1, 2, 3, 4}));
}

// The checker must notice a corrupted corpus.
TEST(Corpus, CheckerRejectsAStaleGraph) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "cqa_corpus_check";
  fs::remove_all(dir);
  fs::create_directories(dir / "graphs");
  WriteFile((dir / "questions.tsv").string(), "there\tIs there a red car?\nodd\tIs there a dog?\n");
  WriteFile((dir / "graphs" / "01.graph").string(), "node 1 c=car p=[] pr=[] f=[] g=[] q=exists\ntarget existence\n");
  CorpusReport r = CheckCorpus(dir.string());
  EXPECT_EQ(r.graph_mismatches.size(), 2u);
  EXPECT_EQ(r.label_errors.size(), 1u);
  EXPECT_FALSE(r.Ok());
}

}  // namespace
}  // namespace cqa
