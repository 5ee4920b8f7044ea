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

#include "cqa/scene.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "cqa/errors.h"
#include "cqa/text.h"
#include "cqa/vocabulary.h"
#include "json.hpp"

namespace cqa {
namespace {

using json = nlohmann::ordered_json;

std::string ObjectName(const SceneObject& o) {
  return "object " + std::to_string(o.id) + " (" + o.cls + ")";
}

bool IsColor(const std::string& c) {
  auto names = ColorNames();
  return std::find(names.begin(), names.end(), c) != names.end();
}

void CheckColors(const std::vector<std::string>& colors, const std::string& who) {
  if (colors.empty() || colors.size() > 3) throw SceneError(who + ": needs 1 to 3 colors");
  for (const std::string& c : colors) {
    if (!IsColor(c)) throw SceneError(who + ": unknown color '" + c + "'");
  }
}

json BoxJson(const Box& b) { return {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}}; }

Box BoxFrom(const json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("w").get<double>(),
          j.at("h").get<double>()};
}

}  // namespace

Box Intersect(const Box& a, const Box& b) {
  double x0 = std::max(a.x, b.x);
  double y0 = std::max(a.y, b.y);
  double x1 = std::min(a.right(), b.right());
  double y1 = std::min(a.bottom(), b.bottom());
  if (x1 <= x0 || y1 <= y0) return {x0, y0, 0, 0};
  return {x0, y0, x1 - x0, y1 - y0};
}

double Gap(const Box& a, const Box& b) {
  double dx = std::max({0.0, a.x - b.right(), b.x - a.right()});
  double dy = std::max({0.0, a.y - b.bottom(), b.y - a.bottom()});
  return std::hypot(dx, dy);
}

const SceneObject* Scene::Find(int id) const {
  for (const SceneObject& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

void ValidateScene(const Scene& scene) {
  if (!(scene.width > 0) || !(scene.height > 0)) throw SceneError("image size must be positive");
  std::set<int> ids;
  for (const SceneObject& o : scene.objects) {
    if (!ids.insert(o.id).second) throw SceneError("duplicate object id " + std::to_string(o.id));
  }
  for (const SceneObject& o : scene.objects) {
    std::string who = ObjectName(o);
    if (o.cls.empty()) throw SceneError(who + ": empty class");
    if (o.region.empty() || !scene.bounds().Contains(o.region)) {
      throw SceneError(who + ": region outside the image");
    }
    if (!(o.depth >= 0)) throw SceneError(who + ": negative depth");
    CheckColors(o.colors, who);
    bool person = o.cls == "person";
    if (person != o.age.has_value() || person != o.gender.has_value()) {
      throw SceneError(who + ": age and gender are required for persons only");
    }
    if (o.age && *o.age < 0) throw SceneError(who + ": negative age");
    if (o.gender && *o.gender != "male" && *o.gender != "female") {
      throw SceneError(who + ": gender must be male or female");
    }
    if (o.gaze && !ids.count(*o.gaze)) throw SceneError(who + ": gaze at unknown object");
    for (const Part& p : o.parts) {
      if (p.name.empty()) throw SceneError(who + ": unnamed part");
      if (p.region.empty() || !o.region.Contains(p.region)) {
        throw SceneError(who + ": part " + p.name + " outside the object box");
      }
      CheckColors(p.colors, who + " part " + p.name);
    }
    if (!o.detectability.full && o.detectability.alpha &&
        !(*o.detectability.alpha > 0 && *o.detectability.alpha <= 1)) {
      throw SceneError(who + ": region_only threshold must be in (0, 1]");
    }
  }
  for (const RelationTuple& t : scene.relations) {
    if (!ids.count(t.subject) || !ids.count(t.object)) {
      throw SceneError("relation " + t.relation + " references an unknown object");
    }
    if (t.relation.empty()) throw SceneError("relation tuple without a name");
  }
}

Scene ParseScene(std::string_view json_text, const std::string& source) {
  Scene scene;
  try {
    json j = json::parse(json_text);
    if (!j.contains("format") || j.at("format") != kSceneFormat) {
      throw SceneError(source + ": missing or unsupported format (want " +
                       std::string(kSceneFormat) + ")");
    }
    scene.width = j.at("width").get<double>();
    scene.height = j.at("height").get<double>();
    for (const json& jo : j.at("objects")) {
      SceneObject o;
      o.id = jo.at("id").get<int>();
      o.cls = jo.at("class").get<std::string>();
      o.region = BoxFrom(jo.at("region"));
      o.depth = jo.value("depth", 0.0);
      o.colors = jo.at("colors").get<std::vector<std::string>>();
      if (jo.contains("age") && !jo["age"].is_null()) o.age = jo["age"].get<int>();
      if (jo.contains("gender") && !jo["gender"].is_null()) {
        o.gender = jo["gender"].get<std::string>();
      }
      if (jo.contains("gaze") && !jo["gaze"].is_null()) o.gaze = jo["gaze"].get<int>();
      if (jo.contains("parts")) {
        for (const json& jp : jo["parts"]) {
          o.parts.push_back({jp.at("name").get<std::string>(), BoxFrom(jp.at("region")),
                             jp.at("colors").get<std::vector<std::string>>()});
        }
      }
      if (jo.contains("detectability")) {
        const json& d = jo["detectability"];
        if (d.is_string() && d == "full") {
          o.detectability = Detectability::Full();
        } else if (d.is_string() && d == "region_only") {
          o.detectability = Detectability::RegionOnly(std::nullopt);
        } else if (d.is_object() && d.contains("region_only")) {
          o.detectability = Detectability::RegionOnly(d["region_only"].get<double>());
        } else {
          throw SceneError(source + ": bad detectability for object " + std::to_string(o.id));
        }
      }
      scene.objects.push_back(std::move(o));
    }
    if (j.contains("relations")) {
      for (const json& jr : j["relations"]) {
        scene.relations.push_back({jr.at("subject").get<int>(),
                                   jr.at("relation").get<std::string>(),
                                   jr.at("object").get<int>()});
      }
    }
  } catch (const json::exception& e) {
    throw SceneError(source + ": " + e.what());
  }
  try {
    ValidateScene(scene);
  } catch (const SceneError& e) {
    throw SceneError(source + ": " + e.what());
  }
  return scene;
}

Scene LoadScene(const std::string& path) { return ParseScene(ReadFile(path), path); }

std::string SceneToJson(const Scene& scene) {
  json j;
  j["format"] = kSceneFormat;
  j["width"] = scene.width;
  j["height"] = scene.height;
  j["objects"] = json::array();
  for (const SceneObject& o : scene.objects) {
    json jo;
    jo["id"] = o.id;
    jo["class"] = o.cls;
    jo["region"] = BoxJson(o.region);
    jo["depth"] = o.depth;
    jo["colors"] = o.colors;
    jo["age"] = o.age ? json(*o.age) : json(nullptr);
    jo["gender"] = o.gender ? json(*o.gender) : json(nullptr);
    jo["gaze"] = o.gaze ? json(*o.gaze) : json(nullptr);
    jo["parts"] = json::array();
    for (const Part& p : o.parts) {
      jo["parts"].push_back({{"name", p.name}, {"region", BoxJson(p.region)}, {"colors", p.colors}});
    }
    if (o.detectability.full) {
      jo["detectability"] = "full";
    } else if (o.detectability.alpha) {
      jo["detectability"] = {{"region_only", *o.detectability.alpha}};
    } else {
      jo["detectability"] = "region_only";
    }
    j["objects"].push_back(std::move(jo));
  }
  j["relations"] = json::array();
  for (const RelationTuple& t : scene.relations) {
    j["relations"].push_back(
        {{"subject", t.subject}, {"relation", t.relation}, {"object", t.object}});
  }
  return j.dump(2) + "\n";
}

}  // namespace cqa
