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

#include "cqa/vocabulary.h"

#include <algorithm>
#include <array>

namespace cqa {
namespace {

constexpr std::array<std::string_view, 11> kColorNames = {
    "black", "blue",   "brown",  "grey", "green", "orange",
    "pink",  "purple", "red",    "white", "yellow"};

constexpr std::array<std::string_view, 7> kFunctionNames = {
    "color", "colors", "age", "gender", "location", "type", "size"};

constexpr std::array<std::string_view, 3> kSetNames = {"quantity", "difference",
                                                       "similarity"};

const std::vector<RelationInfo>& Registry() {
  using K = RelationKind;
  using F = RelationFamily;
  static const std::vector<RelationInfo> registry = {
      {"left_of", "to the left of", "right_of", K::kSpatial, F::kHorizontal, true},
      {"right_of", "to the right of", "left_of", K::kSpatial, F::kHorizontal, true},
      {"above", "above", "below", K::kSpatial, F::kVertical, true},
      {"below", "below", "above", K::kSpatial, F::kVertical, true},
      {"on", "on", "under", K::kSpatial, F::kSupport, true},
      {"under", "under", "on", K::kSpatial, F::kSupport, true},
      {"behind", "behind", "in_front_of", K::kSpatial, F::kDepth, true},
      {"in_front_of", "in front of", "behind", K::kSpatial, F::kDepth, true},
      {"near", "near", "near", K::kSpatial, F::kProximity, true},
      {"in", "in", "", K::kSpatial, F::kProximity, false},
      {"touching", "touching", "touching", K::kSpatial, F::kProximity, false},
      {"looking_at", "looking at", "", K::kGaze, F::kGaze, false},
      {"part_of", "of", "", K::kPart, F::kPart, false},
      {"holding", "holding", "", K::kTuple, F::kAction, false},
      {"wearing", "wearing", "", K::kTuple, F::kAction, false},
      {"riding", "riding", "", K::kTuple, F::kAction, false},
      {"carrying", "carrying", "", K::kTuple, F::kAction, false},
      {"eating", "eating", "", K::kTuple, F::kAction, false},
      {"sitting_on", "sitting on", "", K::kTuple, F::kAction, false},
      {"playing_with", "playing with", "", K::kTuple, F::kAction, false},
  };
  return registry;
}

}  // namespace

std::string_view Name(PropertyFunction f) {
  return kFunctionNames[static_cast<size_t>(f)];
}

std::string_view Name(SetFunction g) { return kSetNames[static_cast<size_t>(g)]; }

std::optional<PropertyFunction> ParsePropertyFunction(std::string_view name) {
  for (size_t i = 0; i < kFunctionNames.size(); ++i) {
    if (kFunctionNames[i] == name) return static_cast<PropertyFunction>(i);
  }
  return std::nullopt;
}

std::optional<SetFunction> ParseSetFunction(std::string_view name) {
  for (size_t i = 0; i < kSetNames.size(); ++i) {
    if (kSetNames[i] == name) return static_cast<SetFunction>(i);
  }
  return std::nullopt;
}

std::string_view Name(PropertyGroup g) {
  switch (g) {
    case PropertyGroup::kColor: return "color";
    case PropertyGroup::kSize: return "size";
    case PropertyGroup::kLocation: return "location";
    case PropertyGroup::kRelativeLocation: return "relative location";
    case PropertyGroup::kGender: return "gender";
    case PropertyGroup::kAge: return "age";
  }
  return "";
}

std::optional<PropertyGroup> GroupOf(std::string_view p) {
  if (std::find(kColorNames.begin(), kColorNames.end(), p) != kColorNames.end()) {
    return PropertyGroup::kColor;
  }
  if (p == "small" || p == "big" || p == "average") return PropertyGroup::kSize;
  if (p == "top" || p == "bottom" || p == "center") return PropertyGroup::kLocation;
  if (p == "left" || p == "right") return PropertyGroup::kRelativeLocation;
  if (p == "male" || p == "female") return PropertyGroup::kGender;
  if (p == "young" || p == "adult" || p == "old") return PropertyGroup::kAge;
  return std::nullopt;
}

std::optional<PropertyFunction> FunctionOf(PropertyGroup g) {
  switch (g) {
    case PropertyGroup::kColor: return PropertyFunction::kColor;
    case PropertyGroup::kSize: return PropertyFunction::kSize;
    case PropertyGroup::kLocation: return PropertyFunction::kLocation;
    case PropertyGroup::kGender: return PropertyFunction::kGender;
    case PropertyGroup::kAge: return PropertyFunction::kAge;
    case PropertyGroup::kRelativeLocation: return std::nullopt;
  }
  return std::nullopt;
}

bool IsSupportedProperty(std::string_view p) { return GroupOf(p).has_value(); }

std::span<const std::string_view> ColorNames() { return kColorNames; }

int AgeGroup(int years) {
  static constexpr std::array<int, 7> kUpper = {2, 6, 13, 20, 32, 43, 53};
  for (size_t i = 0; i < kUpper.size(); ++i) {
    if (years <= kUpper[i]) return static_cast<int>(i);
  }
  return 7;
}

std::string_view AgeGroupLabel(int group) {
  static constexpr std::array<std::string_view, kAgeGroups> kLabels = {
      "0-2", "4-6", "8-13", "15-20", "25-32", "38-43", "48-53", "60+"};
  return kLabels.at(static_cast<size_t>(group));
}

std::optional<RelationInfo> FindRelation(std::string_view name) {
  for (const RelationInfo& info : Registry()) {
    if (info.name == name) return info;
  }
  for (std::string_view prefix : {"sim_", "diff_"}) {
    if (name.substr(0, prefix.size()) != prefix) continue;
    std::string_view f = name.substr(prefix.size());
    auto fn = ParsePropertyFunction(f);
    if (!fn || *fn == PropertyFunction::kColors) return std::nullopt;
    std::string phrase = prefix == std::string_view("sim_") ? "with the same " : "with a different ";
    phrase += f;
    phrase += " as";
    return RelationInfo{std::string(name), phrase, std::string(name),
                        RelationKind::kComparison, RelationFamily::kComparison, false};
  }
  return std::nullopt;
}

bool IsKnownRelation(std::string_view name) { return FindRelation(name).has_value(); }

std::span<const RelationInfo> RegisteredRelations() { return Registry(); }

std::string RelationPhrase(std::string_view name) {
  if (auto info = FindRelation(name)) return info->phrase;
  std::string phrase(name);
  std::replace(phrase.begin(), phrase.end(), '_', ' ');
  return phrase;
}

}  // namespace cqa
