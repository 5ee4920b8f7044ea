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

// The closed vocabularies shared by the parser, the graph and the visual
// analyzers: property groups, property functions, set functions and the
// relation registry.

#ifndef CQA_VOCABULARY_H_
#define CQA_VOCABULARY_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cqa {

// Functions returning a single-object property value.
enum class PropertyFunction { kColor, kColors, kAge, kGender, kLocation, kType, kSize };

// Functions over a set of objects sharing a class resolution.
enum class SetFunction { kQuantity, kDifference, kSimilarity };

std::string_view Name(PropertyFunction f);
std::string_view Name(SetFunction g);
std::optional<PropertyFunction> ParsePropertyFunction(std::string_view name);
std::optional<SetFunction> ParseSetFunction(std::string_view name);

// Groups of predicate properties. kRelativeLocation has no function.
enum class PropertyGroup { kColor, kSize, kLocation, kRelativeLocation, kGender, kAge };

std::string_view Name(PropertyGroup g);

// The group owning a predicate property word, or nullopt when the word is
// not a supported property.
std::optional<PropertyGroup> GroupOf(std::string_view property);

// The function whose values a group's predicates are drawn from.
std::optional<PropertyFunction> FunctionOf(PropertyGroup g);

bool IsSupportedProperty(std::string_view property);

// The 11 color names.
std::span<const std::string_view> ColorNames();

// Eight age brackets: 0-2, 4-6, 8-13, 15-20, 25-32, 38-43, 48-53, 60+.
// Ages falling between brackets join the next bracket up.
int AgeGroup(int years);
std::string_view AgeGroupLabel(int group);
constexpr int kAgeGroups = 8;

// Relation registry.
enum class RelationKind {
  kSpatial,     // box geometry or depth
  kGaze,        // looking_at
  kPart,        // part_of (sub-objects)
  kComparison,  // sim_<f> / diff_<f>
  kTuple,       // ground-truth relation tuples
};

enum class RelationFamily {
  kHorizontal,
  kVertical,
  kSupport,
  kDepth,
  kProximity,
  kGaze,
  kPart,
  kAction,
  kComparison,
};

struct RelationInfo {
  std::string name;
  std::string phrase;   // "to the right of"
  std::string inverse;  // empty when none
  RelationKind kind;
  RelationFamily family;
  bool directional;     // has a search region for guided detection
};

// Known relation, including the comparison relations sim_<f> / diff_<f>.
std::optional<RelationInfo> FindRelation(std::string_view name);
bool IsKnownRelation(std::string_view name);

// All registered non-comparison relations in registry order.
std::span<const RelationInfo> RegisteredRelations();

// Surface phrase for a relation name; falls back to the name with
// underscores replaced by spaces.
std::string RelationPhrase(std::string_view name);

}  // namespace cqa

#endif  // CQA_VOCABULARY_H_
