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

// Symbolic scene: the ground truth the analyzers read instead of pixels.

#ifndef CQA_SCENE_H_
#define CQA_SCENE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cqa {

struct Box {
  double x = 0, y = 0, w = 0, h = 0;

  double cx() const { return x + w / 2; }
  double cy() const { return y + h / 2; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }
  bool empty() const { return w <= 0 || h <= 0; }

  // Closed containment of a point.
  bool Contains(double px, double py) const {
    return px >= x && px <= right() && py >= y && py <= bottom();
  }
  bool Contains(const Box& b) const {
    return b.x >= x && b.y >= y && b.right() <= right() && b.bottom() <= bottom();
  }

  bool operator==(const Box&) const = default;
};

Box Intersect(const Box& a, const Box& b);

// Euclidean distance between the closest points of two boxes; 0 when they
// overlap.
double Gap(const Box& a, const Box& b);

struct Part {
  std::string name;
  Box region;
  std::vector<std::string> colors;

  bool operator==(const Part&) const = default;
};

struct Detectability {
  bool full = true;
  std::optional<double> alpha;  // RegionOnly threshold; nullopt uses the profile default

  static Detectability Full() { return {}; }
  static Detectability RegionOnly(std::optional<double> alpha) { return {false, alpha}; }
  bool operator==(const Detectability&) const = default;
};

struct SceneObject {
  int id = 0;
  std::string cls;
  Box region;
  double depth = 0;  // smaller is closer to the camera
  std::vector<std::string> colors;
  std::optional<int> age;
  std::optional<std::string> gender;
  std::optional<int> gaze;
  std::vector<Part> parts;
  Detectability detectability;

  // Derived sub-objects only: id of the object this part belongs to. Not
  // part of the file format.
  int host = 0;

  bool operator==(const SceneObject&) const = default;
};

struct RelationTuple {
  int subject = 0;
  std::string relation;
  int object = 0;

  bool operator==(const RelationTuple&) const = default;
};

struct Scene {
  double width = 0;
  double height = 0;
  std::vector<SceneObject> objects;
  std::vector<RelationTuple> relations;

  const SceneObject* Find(int id) const;
  Box bounds() const { return {0, 0, width, height}; }

  bool operator==(const Scene&) const = default;
};

inline constexpr std::string_view kSceneFormat = "cqa.scene.v1";

// Throws SceneError naming the first violated invariant.
void ValidateScene(const Scene& scene);

// JSON scene files. Parse errors and invariant violations throw
// SceneError; missing files throw IoError.
Scene ParseScene(std::string_view json_text, const std::string& source = "<scene>");
Scene LoadScene(const std::string& path);
std::string SceneToJson(const Scene& scene);

}  // namespace cqa

#endif  // CQA_SCENE_H_
