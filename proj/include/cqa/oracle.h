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

// Brute-force reference evaluator over ground truth, and the random scene
// and question generators used to test the engine against it.

#ifndef CQA_ORACLE_H_
#define CQA_ORACLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cqa/knowledge.h"
#include "cqa/qgraph.h"
#include "cqa/scene.h"

namespace cqa {

inline constexpr int kOracleMaxNodes = 5;
inline constexpr int kOracleMaxObjects = 30;

// Answer value for the graph over the scene's ground truth. Every object is
// visible; no detector profile or priors are involved. Throws BoundExceeded
// past kOracleMaxNodes / kOracleMaxObjects.
std::string OracleAnswer(const QuestionGraph& graph, const Scene& scene, const KnowledgeBase& kb);

struct SceneConfig {
  int min_objects = 3;
  int max_objects = 10;
  std::vector<std::string> classes;  // empty: a built-in pool of detector classes
  double region_only = 0.0;          // fraction of objects marked RegionOnly
};

Scene GenerateScene(uint64_t seed, const SceneConfig& config = {});

// A question from the built-in templates, filled from the scene and the
// lexicon. Roughly 30% name something the scene does not contain.
std::string GenerateQuestion(uint64_t seed, const Scene& scene);

}  // namespace cqa

#endif  // CQA_ORACLE_H_
