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

// Local commonsense knowledge: weighted concept triples, class resolution
// and common-relation priors for guided detection.

#ifndef CQA_KNOWLEDGE_H_
#define CQA_KNOWLEDGE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cqa/scene.h"

namespace cqa {

enum class KbRelation { kIsA, kInstanceOf, kMadeOf, kPartOf, kSynonym, kSimilarTo, kMemberOf };

std::string_view Name(KbRelation r);
std::optional<KbRelation> ParseKbRelation(std::string_view name);

struct KnowledgeTriple {
  std::string head;
  KbRelation relation = KbRelation::kIsA;
  std::string tail;
  double weight = 1.0;

  bool operator==(const KnowledgeTriple&) const = default;
};

// Triple store. Text format: head<TAB>relation<TAB>tail<TAB>weight, '#'
// comments. Repeated triples accumulate their weights.
class KnowledgeBase {
 public:
  static KnowledgeBase Parse(std::string_view text, const std::string& source = "<kb>");
  static KnowledgeBase Load(const std::string& path);

  void Add(const KnowledgeTriple& t);

  // Triples matching every given slot, in first-insertion order.
  std::vector<KnowledgeTriple> Query(std::optional<std::string_view> head,
                                     std::optional<KbRelation> relation,
                                     std::optional<std::string_view> tail) const;

  const std::vector<KnowledgeTriple>& triples() const { return triples_; }
  size_t size() const { return triples_.size(); }

  // Triples lighter than this are ignored by class resolution.
  double weight_floor = 1.0;

 private:
  std::vector<KnowledgeTriple> triples_;
  std::map<std::tuple<std::string, KbRelation, std::string>, size_t> index_;
  std::multimap<std::string, size_t> by_head_;
  std::multimap<std::string, size_t> by_tail_;
};

struct ClassResolution {
  enum class Kind {
    kAny,  // unconstrained node: every detectable class
    kBasic,
    kSubordinate,
    kSynonym,
    kSuperordinate,
    kGroup,
    kSubObject,
    kUnknown,
  };
  Kind kind = Kind::kUnknown;
  std::string name;                  // the class as asked
  std::vector<std::string> members;  // detector classes to look for
  std::string link;                  // "synonym" or "similar" for kSynonym
  int min_count = 1;                 // 2 for groups
  std::vector<std::string> hosts;    // sub-object host classes; empty means any

  bool operator==(const ClassResolution&) const = default;
};

std::string_view Name(ClassResolution::Kind k);

inline constexpr int kMaxSuperordinateMembers = 8;

// Resolution order: basic, person subclass, synonym / similar,
// superordinate, group, sub-object, unknown.
ClassResolution ResolveClass(std::string_view name, const KnowledgeBase& kb,
                             const std::set<std::string>& known_classes);

struct RelationPrior {
  std::string subject;
  std::string relation;
  std::string object;
  double frequency = 1;
  // Mean subject-center displacement in units of the partner box size,
  // and its spread.
  double dx = 0, dy = 0, spread = 0;

  bool operator==(const RelationPrior&) const = default;
};

class RelationPriors {
 public:
  // JSON array of {subject, relation, object, frequency, offset:{dx,dy,spread}}.
  static RelationPriors Parse(std::string_view json_text, const std::string& source = "<priors>");
  static RelationPriors Load(const std::string& path);

  void Add(RelationPrior p) { priors_.push_back(std::move(p)); }
  std::vector<RelationPrior> ForSubject(std::string_view cls) const;
  const std::vector<RelationPrior>& all() const { return priors_; }

 private:
  std::vector<RelationPrior> priors_;
};

// Most frequent prior of cls whose partner is detectable; ties go to the
// lexicographically smaller partner.
std::optional<RelationPrior> BestPrior(std::string_view cls, const RelationPriors& priors,
                                       const std::set<std::string>& known_classes);

// Search box for the subject given the partner's box.
Box PriorRegion(const RelationPrior& prior, const Box& partner);

}  // namespace cqa

#endif  // CQA_KNOWLEDGE_H_
