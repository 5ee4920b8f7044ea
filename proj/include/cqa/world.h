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

// Detector simulation and the visual analyzers over a symbolic scene.

#ifndef CQA_WORLD_H_
#define CQA_WORLD_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqa/scene.h"
#include "cqa/vocabulary.h"

namespace cqa {

struct DetectorProfile {
  std::set<std::string> known_classes;
  double default_alpha = 0.25;

  bool Knows(const std::string& cls) const { return known_classes.count(cls) > 0; }

  // {"known_classes": [...], "default_alpha": 0.25}
  static DetectorProfile Parse(std::string_view json_text, const std::string& source = "<profile>");
  static DetectorProfile Load(const std::string& path);
  // The profile shipped in data/profile.json.
  static const DetectorProfile& Default();
};

struct Detection {
  int object_id = 0;
  std::string cls;
  Box region;
  std::string via_hint;  // "above refrigerator"; empty for plain detection

  bool operator==(const Detection&) const = default;
};

// Objects of the requested classes whose center lies in region (whole
// image when nullopt). RegionOnly objects are found only when the region
// covers at most alpha of the image. Ordered by object id.
std::vector<Detection> Detect(const Scene& scene, const std::set<std::string>& classes,
                              const std::optional<Box>& region, const DetectorProfile& profile);

// Geometry constants.
inline constexpr double kOnTolerance = 0.05;      // x image height
inline constexpr double kOnOverlap = 0.5;         // of the upper object's width
inline constexpr double kNearFraction = 0.1;      // x image diagonal
inline constexpr double kInsideFraction = 0.9;    // of the inner box
inline constexpr double kTouchGap = 1.0;          // pixels
inline constexpr double kSmallRatio = 0.6;
inline constexpr double kBigRatio = 1.6;
inline constexpr double kRegionScale = 1.5;

// Person subclass from age and gender: baby, boy, girl, man or woman.
std::string PersonType(const SceneObject& o);

// True when a person object belongs to the subordinate class (man, woman,
// boy, girl, baby, child).
bool IsPersonSubclass(const SceneObject& o, std::string_view subclass);

// The built-in person subclasses.
const std::vector<std::string>& PersonSubclasses();

// Throws UnknownProperty for words without an analyzer.
bool CheckPredicateProperty(const SceneObject& o, std::string_view property, const Scene& scene);

// Throws NotApplicable for age/gender on non-persons.
std::string GetFunctionProperty(const SceneObject& o, PropertyFunction f, const Scene& scene);

// "small", "big" or "average" relative to the other objects of the class.
std::string SizeOf(const SceneObject& o, const Scene& scene);

// "top left" .. "bottom right" on a 3x3 grid.
std::string LocationOf(const SceneObject& o, const Scene& scene);

// Throws UnknownRelation.
bool CheckRelation(std::string_view relation, const SceneObject& x, const SceneObject& y,
                   const Scene& scene);

struct SetResult {
  SetFunction function = SetFunction::kQuantity;
  bool found = false;
  int count = 0;
  std::vector<std::pair<std::string, int>> subgroups;  // class -> count, largest first
  std::string property;                                // difference / similarity function
  std::string value;
  int odd_object = 0;
  double odd_cx = 0, odd_cy = 0;

  // "4", "color (yellow), object center: (95, 325)", "color (red)",
  // "no difference found".
  std::string ToString() const;
};

// Functions scanned by difference and similarity, in order.
const std::vector<PropertyFunction>& SetScanOrder();

SetResult ComputeSetProperty(SetFunction g, const std::vector<const SceneObject*>& objects,
                             const Scene& scene);

// Where an object standing in relation r to anchor can have its center.
// nullopt when the clipped region is empty. Throws NotDirectional.
std::optional<Box> RelationSearchRegion(const Box& anchor, std::string_view relation,
                                        double width, double height);

// Sub-objects of the hosts: named parts, the torso band for "shirt", or a
// ninth of the host box for area words ("middle", "top"...). Ids are
// derived from the host id and never collide with scene ids below
// kDerivedIdBase.
inline constexpr int kDerivedIdBase = 1000000;
std::vector<SceneObject> SubObjects(const Scene& scene, std::string_view part,
                                    const std::vector<const SceneObject*>& hosts);

// Area words usable as sub-objects of any host.
bool IsAreaWord(std::string_view word);

}  // namespace cqa

#endif  // CQA_WORLD_H_
