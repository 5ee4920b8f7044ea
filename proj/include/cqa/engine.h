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

// Answers a question graph against a scene: class resolution, detection
// with guided retries, recursive evaluation under quantifiers and the
// answer texts.

#ifndef CQA_ENGINE_H_
#define CQA_ENGINE_H_

#include <string_view>

#include "cqa/answer.h"
#include "cqa/knowledge.h"
#include "cqa/lexicon.h"
#include "cqa/qgraph.h"
#include "cqa/scene.h"
#include "cqa/world.h"

namespace cqa {

struct EngineOptions {
  bool alternatives = true;
  bool elaborations = true;
  bool guided_detection = true;
  bool plan_traversal = true;
};

// satisfied of candidates objects meet q. min_count raises the floor for
// group classes.
bool ApplyQuantifier(const Quantifier& q, int satisfied, int candidates, int min_count = 1);

class Engine {
 public:
  Engine(KnowledgeBase kb, RelationPriors priors, DetectorProfile profile,
         EngineOptions options = {}, const Lexicon& lexicon = Lexicon::Default());

  // Throws ParseError / GraphError for questions outside the grammar.
  Answer Ask(std::string_view question, const Scene& scene) const;
  Answer Evaluate(const QuestionGraph& graph, const Scene& scene) const;

  // The graph after traversal planning, as the evaluator sees it.
  QuestionGraph Plan(const QuestionGraph& graph, const Scene& scene) const;

  const KnowledgeBase& kb() const { return kb_; }
  const RelationPriors& priors() const { return priors_; }
  const DetectorProfile& profile() const { return profile_; }
  const Lexicon& lexicon() const { return *lexicon_; }
  EngineOptions& options() { return options_; }
  const EngineOptions& options() const { return options_; }

 private:
  KnowledgeBase kb_;
  RelationPriors priors_;
  DetectorProfile profile_;
  EngineOptions options_;
  const Lexicon* lexicon_;
};

}  // namespace cqa

#endif  // CQA_ENGINE_H_
