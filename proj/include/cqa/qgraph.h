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

// The question graph: object nodes joined by relation edges, its text
// serialization, basic-pattern fragments and traversal planning.

#ifndef CQA_QGRAPH_H_
#define CQA_QGRAPH_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqa/qparse.h"
#include "cqa/vocabulary.h"

namespace cqa {

struct Quantifier {
  enum class Kind { kExists, kForAll, kAtLeast };
  Kind kind = Kind::kExists;
  int n = 1;  // only meaningful for kAtLeast

  static Quantifier Exists() { return {}; }
  static Quantifier ForAll() { return {Kind::kForAll, 1}; }
  static Quantifier AtLeast(int n) { return {Kind::kAtLeast, n}; }

  bool operator==(const Quantifier&) const = default;
};

// "exists", "all", "atleast:2".
std::string ToString(const Quantifier& q);
std::optional<Quantifier> ParseQuantifier(std::string_view s);

struct PredicateProperty {
  std::string name;
  std::optional<PropertyGroup> group;  // nullopt for unsupported words

  static PredicateProperty Of(std::string name);
  bool operator==(const PredicateProperty&) const = default;
};

struct ObjectNode {
  int id = 0;
  std::string cls;  // empty: unconstrained
  std::vector<PredicateProperty> checks;
  std::vector<PredicateProperty> restrictions;
  std::vector<std::string> property_queries;  // function names
  std::vector<std::string> set_queries;
  Quantifier quantifier;
  bool class_queried = false;

  bool operator==(const ObjectNode&) const = default;
};

enum class Traversal { kAsStated, kReversed };

struct RelationEdge {
  std::string relation;
  int from = 0;
  int to = 0;
  Traversal traversal = Traversal::kAsStated;

  // Endpoints in traversal order.
  int source() const { return traversal == Traversal::kAsStated ? from : to; }
  int sink() const { return traversal == Traversal::kAsStated ? to : from; }

  bool operator==(const RelationEdge&) const = default;
};

struct QuestionGraph {
  std::vector<ObjectNode> nodes;
  std::vector<RelationEdge> edges;
  QueryTarget target;

  const ObjectNode* Find(int id) const;
  ObjectNode* Find(int id);

  // Component roots in declaration order: the first node of each weakly
  // connected component that has no incoming edge in stated orientation.
  std::vector<int> Roots() const;

  // Children of a node in the tree hanging from root; each entry is an
  // index into edges.
  std::vector<size_t> ChildEdges(int node, int parent) const;

  bool operator==(const QuestionGraph&) const = default;
};

// Folds the ternaries into nodes and edges. Throws GraphError for
// undeclared variables, self loops, malformed quantifiers, more than one
// query, or components that are not trees.
QuestionGraph BuildGraph(const std::vector<TernaryExpression>& ternaries,
                         const QueryTarget& target);

// Parse and build in one step.
QuestionGraph GraphFromQuestion(std::string_view question,
                                const Lexicon& lexicon = Lexicon::Default());

// Canonical text form, one line per node, edge and target:
//   node 1 c=cat p=[] pr=[red,small] f=[] g=[] q=all
//   edge on 2 3 as-stated
//   target existence
std::string Serialize(const QuestionGraph& g);
QuestionGraph DeserializeGraph(std::string_view text);

struct PatternInstance {
  enum class Kind {
    kObjectExistence,
    kPropertyExistence,
    kFunctionProperty,
    kSetProperty,
    kRelationExistence
  };
  Kind kind = Kind::kObjectExistence;
  int node = 0;
  int other = 0;             // second node for relation existence
  std::string cls;           // class of node
  std::string other_cls;     // class of other
  std::string element;       // property, function, set function or relation name
  bool restriction = false;  // property applied before quantification
  Quantifier quantifier;
  Traversal traversal = Traversal::kAsStated;
  bool query = false;

  bool operator==(const PatternInstance&) const = default;
};

std::string_view Name(PatternInstance::Kind k);

// "ObjectExistence(cat, q=all)", "RelationExistence(cat, on, grass)".
std::string ToString(const PatternInstance& p);

std::vector<PatternInstance> ExtractFragments(const QuestionGraph& g);

// Orients each edge from the endpoint whose class has detections toward
// the one without, when exactly one side has detections. Classes missing
// from the map count as undetected.
QuestionGraph PlanTraversal(const QuestionGraph& g, const std::map<std::string, int>& detections);

}  // namespace cqa

#endif  // CQA_QGRAPH_H_
