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

#include "cqa/world.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "cqa/errors.h"
#include "cqa/text.h"
#include "json.hpp"

namespace cqa {
namespace {

using json = nlohmann::json;

constexpr std::string_view kCellNames[3][3] = {
    {"top left", "top", "top right"},
    {"left", "center", "right"},
    {"bottom left", "bottom", "bottom right"},
};

int Cell(double v, double extent) {
  int c = static_cast<int>(std::floor(v / (extent / 3)));
  return std::clamp(c, 0, 2);
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

bool IsPerson(const SceneObject& o) { return o.cls == "person" && o.age && o.gender; }

bool HasTuple(const Scene& scene, int x, std::string_view r, int y) {
  return std::any_of(scene.relations.begin(), scene.relations.end(), [&](const RelationTuple& t) {
    return t.subject == x && t.object == y && t.relation == r;
  });
}

bool On(const SceneObject& x, const SceneObject& y, const Scene& scene) {
  if (HasTuple(scene, x.id, "on", y.id)) return true;
  const Box& a = x.region;
  const Box& b = y.region;
  double overlap = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  return std::abs(a.bottom() - b.y) <= kOnTolerance * scene.height && overlap >= kOnOverlap * a.w;
}

Box Clip(const Box& b, double width, double height) {
  return Intersect(b, Box{0, 0, width, height});
}

}  // namespace

DetectorProfile DetectorProfile::Parse(std::string_view json_text, const std::string& source) {
  DetectorProfile p;
  try {
    json j = json::parse(json_text);
    for (const auto& c : j.at("known_classes")) p.known_classes.insert(c.get<std::string>());
    p.default_alpha = j.value("default_alpha", 0.25);
  } catch (const json::exception& e) {
    throw FormatError(source, 0, e.what());
  }
  if (p.known_classes.empty()) throw FormatError(source, 0, "known_classes is empty");
  if (!(p.default_alpha > 0 && p.default_alpha <= 1)) {
    throw FormatError(source, 0, "default_alpha must be in (0, 1]");
  }
  return p;
}

DetectorProfile DetectorProfile::Load(const std::string& path) {
  return Parse(ReadFile(path), path);
}

const DetectorProfile& DetectorProfile::Default() {
  static const DetectorProfile profile{
      {"aeroplane", "apple",      "banana",     "bear",     "bed",         "bench",
       "bicycle",   "bird",       "boat",       "book",     "bottle",      "bus",
       "car",       "cat",        "chair",      "clock",    "cow",         "cup",
       "diningtable", "dog",      "elephant",   "fence",    "frisbee",     "giraffe",
       "grass",     "horse",      "kite",       "laptop",   "motorbike",   "person",
       "pizza",     "pottedplant", "refrigerator", "sandwich", "sheep",    "skateboard",
       "sofa",      "train",      "tree",       "truck",    "tvmonitor",   "umbrella",
       "vase",      "zebra"},
      0.25};
  return profile;
}

std::vector<Detection> Detect(const Scene& scene, const std::set<std::string>& classes,
                              const std::optional<Box>& region, const DetectorProfile& profile) {
  Box area = region.value_or(scene.bounds());
  double image_area = scene.width * scene.height;
  std::vector<Detection> out;
  for (const SceneObject& o : scene.objects) {
    if (!classes.count(o.cls) || !profile.Knows(o.cls)) continue;
    if (!area.Contains(o.region.cx(), o.region.cy())) continue;
    if (!o.detectability.full) {
      double alpha = o.detectability.alpha.value_or(profile.default_alpha);
      if (area.area() > alpha * image_area) continue;
    }
    out.push_back({o.id, o.cls, o.region, ""});
  }
  std::sort(out.begin(), out.end(),
            [](const Detection& a, const Detection& b) { return a.object_id < b.object_id; });
  return out;
}

std::string PersonType(const SceneObject& o) {
  if (!IsPerson(o)) return o.cls;
  int group = AgeGroup(*o.age);
  if (group == 0) return "baby";
  bool male = *o.gender == "male";
  if (group <= 2) return male ? "boy" : "girl";
  return male ? "man" : "woman";
}

const std::vector<std::string>& PersonSubclasses() {
  static const std::vector<std::string> names = {"man", "woman", "boy", "girl", "baby", "child"};
  return names;
}

bool IsPersonSubclass(const SceneObject& o, std::string_view subclass) {
  if (!IsPerson(o)) return false;
  if (subclass == "child") return AgeGroup(*o.age) <= 2;
  return PersonType(o) == subclass;
}

std::string SizeOf(const SceneObject& o, const Scene& scene) {
  std::vector<double> same, all;
  for (const SceneObject& other : scene.objects) {
    if (other.id == o.id) continue;
    all.push_back(other.region.area());
    if (other.cls == o.cls) same.push_back(other.region.area());
  }
  const std::vector<double>& ref = same.empty() ? all : same;
  if (ref.empty()) return "average";
  double median = Median(ref);
  if (median <= 0) return "average";
  double ratio = o.region.area() / median;
  if (ratio < kSmallRatio) return "small";
  if (ratio > kBigRatio) return "big";
  return "average";
}

std::string LocationOf(const SceneObject& o, const Scene& scene) {
  int col = Cell(o.region.cx(), scene.width);
  int row = Cell(o.region.cy(), scene.height);
  return std::string(kCellNames[row][col]);
}

bool CheckPredicateProperty(const SceneObject& o, std::string_view p, const Scene& scene) {
  auto group = GroupOf(p);
  if (!group) throw UnknownProperty(std::string(p));
  switch (*group) {
    case PropertyGroup::kColor:
      return std::find(o.colors.begin(), o.colors.end(), p) != o.colors.end();
    case PropertyGroup::kSize:
      return SizeOf(o, scene) == p;
    case PropertyGroup::kLocation: {
      int col = Cell(o.region.cx(), scene.width);
      int row = Cell(o.region.cy(), scene.height);
      if (p == "top") return row == 0;
      if (p == "bottom") return row == 2;
      return row == 1 && col == 1;
    }
    case PropertyGroup::kRelativeLocation:
      for (const SceneObject& other : scene.objects) {
        if (other.id == o.id || other.cls != o.cls) continue;
        if (p == "left" && other.region.cx() < o.region.cx()) return false;
        if (p == "right" && other.region.cx() > o.region.cx()) return false;
      }
      return true;
    case PropertyGroup::kGender:
      return IsPerson(o) && *o.gender == p;
    case PropertyGroup::kAge: {
      if (!IsPerson(o)) return false;
      int g = AgeGroup(*o.age);
      if (p == "young") return g <= 2;
      if (p == "adult") return g >= 3;
      return g == kAgeGroups - 1;
    }
  }
  return false;
}

std::string GetFunctionProperty(const SceneObject& o, PropertyFunction f, const Scene& scene) {
  switch (f) {
    case PropertyFunction::kColor:
      return o.colors.empty() ? "" : o.colors.front();
    case PropertyFunction::kColors:
      return Join(o.colors, ", ");
    case PropertyFunction::kSize:
      return SizeOf(o, scene);
    case PropertyFunction::kLocation:
      return LocationOf(o, scene);
    case PropertyFunction::kAge:
      if (!IsPerson(o)) throw NotApplicable("age", o.cls);
      return std::string(AgeGroupLabel(AgeGroup(*o.age)));
    case PropertyFunction::kGender:
      if (!IsPerson(o)) throw NotApplicable("gender", o.cls);
      return *o.gender;
    case PropertyFunction::kType:
      return PersonType(o);
  }
  return "";
}

bool CheckRelation(std::string_view r, const SceneObject& x, const SceneObject& y,
                   const Scene& scene) {
  auto info = FindRelation(r);
  if (!info) throw UnknownRelation(std::string(r));
  const Box& a = x.region;
  const Box& b = y.region;
  if (info->kind == RelationKind::kComparison) {
    bool same = r.substr(0, 4) == "sim_";
    auto f = *ParsePropertyFunction(r.substr(same ? 4 : 5));
    try {
      bool equal = GetFunctionProperty(x, f, scene) == GetFunctionProperty(y, f, scene);
      return same == equal;
    } catch (const NotApplicable&) {
      return false;
    }
  }
  if (r == "left_of") return a.cx() < b.cx();
  if (r == "right_of") return a.cx() > b.cx();
  if (r == "above") return a.cy() < b.cy();
  if (r == "below") return a.cy() > b.cy();
  if (r == "on") return On(x, y, scene);
  if (r == "under") return On(y, x, scene);
  if (r == "behind") return x.depth > y.depth;
  if (r == "in_front_of") return x.depth < y.depth;
  if (r == "near") {
    return Gap(a, b) <= kNearFraction * std::hypot(scene.width, scene.height);
  }
  if (r == "touching") return Gap(a, b) <= kTouchGap;
  if (r == "in") {
    return HasTuple(scene, x.id, "in", y.id) ||
           (a.area() > 0 && Intersect(a, b).area() >= kInsideFraction * a.area());
  }
  if (r == "looking_at") return x.gaze && *x.gaze == y.id;
  if (r == "part_of") return x.host != 0 && x.host == y.id;
  return HasTuple(scene, x.id, r, y.id);
}

const std::vector<PropertyFunction>& SetScanOrder() {
  static const std::vector<PropertyFunction> order = {
      PropertyFunction::kColor, PropertyFunction::kSize, PropertyFunction::kAge,
      PropertyFunction::kGender, PropertyFunction::kType, PropertyFunction::kLocation};
  return order;
}

std::string SetResult::ToString() const {
  switch (function) {
    case SetFunction::kQuantity:
      return std::to_string(count);
    case SetFunction::kDifference:
      if (!found) return "no difference found";
      return property + " (" + value + "), object center: (" + FormatNumber(odd_cx) + ", " +
             FormatNumber(odd_cy) + ")";
    case SetFunction::kSimilarity:
      if (!found) return "no similarity found";
      return property + " (" + value + ")";
  }
  return "";
}

SetResult ComputeSetProperty(SetFunction g, const std::vector<const SceneObject*>& objects,
                             const Scene& scene) {
  SetResult result;
  result.function = g;
  result.count = static_cast<int>(objects.size());
  if (g == SetFunction::kQuantity) {
    std::map<std::string, int> groups;
    for (const SceneObject* o : objects) ++groups[PersonType(*o)];
    result.subgroups.assign(groups.begin(), groups.end());
    std::stable_sort(result.subgroups.begin(), result.subgroups.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    result.found = true;
    return result;
  }
  size_t n = objects.size();
  if ((g == SetFunction::kDifference && n < 3) || (g == SetFunction::kSimilarity && n < 2)) {
    return result;
  }
  for (PropertyFunction f : SetScanOrder()) {
    std::vector<std::string> values;
    try {
      for (const SceneObject* o : objects) values.push_back(GetFunctionProperty(*o, f, scene));
    } catch (const NotApplicable&) {
      continue;
    }
    std::map<std::string, int> counts;
    for (const auto& v : values) ++counts[v];
    if (g == SetFunction::kSimilarity) {
      if (counts.size() != 1) continue;
      result.found = true;
      result.property = std::string(Name(f));
      result.value = values.front();
      return result;
    }
    if (counts.size() != 2) continue;
    auto odd = std::find_if(counts.begin(), counts.end(), [](const auto& c) { return c.second == 1; });
    if (odd == counts.end()) continue;
    // With n >= 3 only one value can occur exactly once.
    for (size_t i = 0; i < n; ++i) {
      if (values[i] != odd->first) continue;
      result.found = true;
      result.property = std::string(Name(f));
      result.value = odd->first;
      result.odd_object = objects[i]->id;
      result.odd_cx = objects[i]->region.cx();
      result.odd_cy = objects[i]->region.cy();
      return result;
    }
  }
  return result;
}

std::optional<Box> RelationSearchRegion(const Box& anchor, std::string_view r, double width,
                                        double height) {
  auto info = FindRelation(r);
  if (!info || !info->directional) throw NotDirectional(std::string(r));
  const Box& a = anchor;
  double eps = kOnTolerance * height;
  Box region;
  if (r == "left_of") {
    region = {0, 0, a.cx(), height};
  } else if (r == "right_of") {
    region = {a.cx(), 0, width - a.cx(), height};
  } else if (r == "above") {
    region = {0, 0, width, a.cy()};
  } else if (r == "below") {
    region = {0, a.cy(), width, height - a.cy()};
  } else if (r == "on") {
    region = {a.cx() - 0.75 * a.w, a.y - kRegionScale * a.h, kRegionScale * a.w,
              kRegionScale * a.h + eps};
  } else if (r == "under") {
    region = {a.cx() - 0.75 * a.w, a.bottom() - eps, kRegionScale * a.w,
              kRegionScale * a.h + eps};
  } else if (r == "near") {
    double grow = kNearFraction * std::hypot(width, height);
    region = {a.x - grow - a.w / 2, a.y - grow - a.h / 2, 2 * a.w + 2 * grow, 2 * a.h + 2 * grow};
  } else {
    // Depth relations: no planar constraint, look around the anchor.
    region = {a.cx() - kRegionScale * a.w / 2, a.cy() - kRegionScale * a.h / 2,
              kRegionScale * a.w, kRegionScale * a.h};
  }
  Box clipped = Clip(region, width, height);
  if (clipped.empty()) return std::nullopt;
  return clipped;
}

bool IsAreaWord(std::string_view word) { return word == "middle"; }

std::vector<SceneObject> SubObjects(const Scene& scene, std::string_view part,
                                    const std::vector<const SceneObject*>& hosts) {
  (void)scene;
  std::vector<SceneObject> out;
  auto derived = [&](const SceneObject& host, int slot, const Box& box,
                     std::vector<std::string> colors) {
    SceneObject o;
    o.id = kDerivedIdBase + host.id * 100 + slot;
    o.cls = std::string(part);
    o.region = box;
    o.depth = host.depth;
    o.colors = std::move(colors);
    o.host = host.id;
    return o;
  };
  for (const SceneObject* host : hosts) {
    bool named = false;
    for (size_t k = 0; k < host->parts.size() && k < 50; ++k) {
      const Part& p = host->parts[k];
      if (p.name != part) continue;
      named = true;
      out.push_back(derived(*host, static_cast<int>(k), p.region, p.colors));
    }
    if (named) continue;
    const Box& b = host->region;
    if (part == "shirt" && host->cls == "person") {
      out.push_back(derived(*host, 50, {b.x + b.w / 4, b.y + b.h / 4, b.w / 2, b.h / 3},
                            host->colors));
    } else if (IsAreaWord(part)) {
      out.push_back(derived(*host, 60, {b.x + b.w / 3, b.y + b.h / 3, b.w / 3, b.h / 3},
                            host->colors));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SceneObject& a, const SceneObject& b) { return a.id < b.id; });
  return out;
}

}  // namespace cqa
