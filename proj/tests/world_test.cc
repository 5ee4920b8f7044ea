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

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "cqa/errors.h"
#include "cqa/oracle.h"
#include "cqa/scene.h"
#include "cqa/text.h"
#include "soundness.h"

namespace cqa {
namespace {

SceneObject Obj(int id, std::string cls, Box box, std::vector<std::string> colors = {"red"}) {
  SceneObject o;
  o.id = id;
  o.cls = std::move(cls);
  o.region = box;
  o.colors = std::move(colors);
  return o;
}

SceneObject Person(int id, Box box, int age, std::string gender) {
  SceneObject o = Obj(id, "person", box);
  o.age = age;
  o.gender = std::move(gender);
  return o;
}

Scene MakeScene(std::vector<SceneObject> objects) {
  Scene s;
  s.width = 640;
  s.height = 480;
  s.objects = std::move(objects);
  return s;
}

Scene Load(const std::string& name) { return LoadScene(std::string(CQA_TEST_DATA) + "/" + name); }

std::vector<int> Ids(const std::vector<Detection>& ds) {
  std::vector<int> out;
  for (const auto& d : ds) out.push_back(d.object_id);
  return out;
}

// ---------------------------------------------------------------------------
// Detection

TEST(Detect, RegionOnlyBottleNeedsASmallRegion) {
  Scene s = Load("table_bottle.json");
  const DetectorProfile& p = DetectorProfile::Default();
  EXPECT_TRUE(Detect(s, {"bottle"}, std::nullopt, p).empty());
  Box small{250, 200, 200, 150};  // 30000 / 307200 < 0.25, holds the bottle center
  auto found = Detect(s, {"bottle"}, small, p);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].object_id, 2);
  Box large{0, 0, 640, 300};  // over a quarter of the image
  EXPECT_TRUE(Detect(s, {"bottle"}, large, p).empty());
}

TEST(Detect, FullSceneReturnsEveryRequestedObject) {
  Scene s = Load("animals.json");
  EXPECT_EQ(Ids(Detect(s, {"dog", "cat"}, std::nullopt, DetectorProfile::Default())),
            (std::vector<int>{1, 2, 3, 4}));
}

TEST(Detect, UnknownClassesAreInvisible) {
  Scene s = MakeScene({Obj(1, "shelf", {10, 10, 50, 50})});
  EXPECT_TRUE(Detect(s, {"shelf"}, std::nullopt, DetectorProfile::Default()).empty());
}

// Oracle: a direct filter over the scene objects.
TEST(Detect, WholeImageEqualsGroundTruthFilterOnRandomScenes) {
  const DetectorProfile& p = DetectorProfile::Default();
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Scene s = GenerateScene(seed);
    std::set<std::string> classes = {"person", "dog", "chair", "bus"};
    std::vector<int> expected;
    for (const auto& o : s.objects) {
      if (classes.count(o.cls)) expected.push_back(o.id);
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(Ids(Detect(s, classes, std::nullopt, p)), expected) << "seed " << seed;
  }
}

// Shrinking the region never adds Full objects; RegionOnly objects may
// appear once the region is small enough.
TEST(Detect, MonotoneUnderRegionShrinking) {
  const DetectorProfile& p = DetectorProfile::Default();
  std::mt19937 rng(7);
  SceneConfig config;
  config.region_only = 0.3;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Scene s = GenerateScene(seed, config);
    std::set<std::string> classes(p.known_classes.begin(), p.known_classes.end());
    std::uniform_real_distribution<double> u(0, 1);
    Box outer{u(rng) * 200, u(rng) * 150, 200 + u(rng) * 240, 150 + u(rng) * 180};
    Box inner{outer.x + outer.w * u(rng) * 0.4, outer.y + outer.h * u(rng) * 0.4, outer.w * 0.5,
              outer.h * 0.5};
    auto big = Detect(s, classes, outer, p);
    for (const Detection& d : Detect(s, classes, inner, p)) {
      const SceneObject* o = s.Find(d.object_id);
      if (o->detectability.full) {
        EXPECT_NE(std::find(big.begin(), big.end(), d), big.end()) << "seed " << seed;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Predicate properties

TEST(Property, ColorMembership) {
  Scene s = MakeScene({Obj(1, "dog", {10, 10, 50, 50}, {"brown"})});
  EXPECT_TRUE(CheckPredicateProperty(s.objects[0], "brown", s));
  EXPECT_FALSE(CheckPredicateProperty(s.objects[0], "black", s));
}

TEST(Property, LoneObjectIsAverage) {
  Scene s = MakeScene({Obj(1, "dog", {10, 10, 50, 50})});
  EXPECT_EQ(SizeOf(s.objects[0], s), "average");
  EXPECT_FALSE(CheckPredicateProperty(s.objects[0], "small", s));
  EXPECT_FALSE(CheckPredicateProperty(s.objects[0], "big", s));
}

TEST(Property, ScopingSceneSizes) {
  Scene s = Load("dogs_scoping.json");
  EXPECT_EQ(SizeOf(s.objects[0], s), "small");
  EXPECT_EQ(SizeOf(s.objects[1], s), "small");
  EXPECT_EQ(SizeOf(s.objects[2], s), "big");
}

TEST(Property, UnsupportedWordThrows) {
  Scene s = MakeScene({Obj(1, "dog", {10, 10, 50, 50})});
  EXPECT_THROW(CheckPredicateProperty(s.objects[0], "tall", s), UnknownProperty);
  try {
    CheckPredicateProperty(s.objects[0], "on", s);
  } catch (const UnknownProperty& e) {
    EXPECT_STREQ(e.what(), "unknown property 'on'");
  }
}

TEST(Property, LocationAndRelativeLocation) {
  Scene s = MakeScene({Obj(1, "cup", {10, 10, 20, 20}), Obj(2, "cup", {300, 220, 20, 20}),
                       Obj(3, "cup", {600, 440, 20, 20})});
  EXPECT_TRUE(CheckPredicateProperty(s.objects[0], "top", s));
  EXPECT_TRUE(CheckPredicateProperty(s.objects[1], "center", s));
  EXPECT_TRUE(CheckPredicateProperty(s.objects[2], "bottom", s));
  EXPECT_TRUE(CheckPredicateProperty(s.objects[0], "left", s));
  EXPECT_FALSE(CheckPredicateProperty(s.objects[1], "left", s));
  EXPECT_TRUE(CheckPredicateProperty(s.objects[2], "right", s));
  EXPECT_EQ(LocationOf(s.objects[0], s), "top left");
  EXPECT_EQ(LocationOf(s.objects[2], s), "bottom right");
}

TEST(Property, PersonAttributes) {
  Scene s = MakeScene({Person(1, {10, 10, 50, 100}, 8, "female"), Person(2, {100, 10, 50, 100}, 70, "male"),
                       Person(3, {200, 10, 50, 100}, 1, "male"), Obj(4, "dog", {300, 10, 50, 50})});
  EXPECT_TRUE(CheckPredicateProperty(s.objects[0], "young", s));
  EXPECT_TRUE(CheckPredicateProperty(s.objects[0], "female", s));
  EXPECT_TRUE(CheckPredicateProperty(s.objects[1], "old", s));
  EXPECT_TRUE(CheckPredicateProperty(s.objects[1], "adult", s));
  EXPECT_FALSE(CheckPredicateProperty(s.objects[3], "male", s));
  EXPECT_EQ(PersonType(s.objects[0]), "girl");
  EXPECT_EQ(PersonType(s.objects[1]), "man");
  EXPECT_EQ(PersonType(s.objects[2]), "baby");
  EXPECT_TRUE(IsPersonSubclass(s.objects[0], "child"));
  EXPECT_TRUE(IsPersonSubclass(s.objects[2], "child"));
  EXPECT_FALSE(IsPersonSubclass(s.objects[1], "child"));
  EXPECT_FALSE(IsPersonSubclass(s.objects[3], "man"));
}

TEST(Property, AgeBrackets) {
  EXPECT_EQ(AgeGroup(0), 0);
  EXPECT_EQ(AgeGroup(2), 0);
  EXPECT_EQ(AgeGroup(3), 1);  // gap joins the next bracket
  EXPECT_EQ(AgeGroup(13), 2);
  EXPECT_EQ(AgeGroup(14), 3);
  EXPECT_EQ(AgeGroup(59), 7);
  EXPECT_EQ(AgeGroupLabel(7), "60+");
  for (int a = 1; a < 100; ++a) EXPECT_GE(AgeGroup(a), AgeGroup(a - 1));
}

// Oracle: color membership recomputed from the raw color lists.
TEST(Property, ElevenColorsMatchRawFieldsOnRandomScenes) {
  ASSERT_EQ(ColorNames().size(), 11u);
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Scene s = GenerateScene(seed);
    for (const SceneObject& o : s.objects) {
      for (std::string_view c : ColorNames()) {
        bool raw = std::find(o.colors.begin(), o.colors.end(), c) != o.colors.end();
        EXPECT_EQ(CheckPredicateProperty(o, std::string(c), s), raw);
      }
    }
  }
}

// Oracle: area ratio against the leave-one-out median of the class,
// written out longhand.
std::string SizeByHand(const SceneObject& o, const Scene& s) {
  std::vector<double> same, other;
  for (const SceneObject& x : s.objects) {
    if (x.id == o.id) continue;
    other.push_back(x.region.w * x.region.h);
    if (x.cls == o.cls) same.push_back(x.region.w * x.region.h);
  }
  std::vector<double>& ref = same.empty() ? other : same;
  if (ref.empty()) return "average";
  std::sort(ref.begin(), ref.end());
  double med = ref.size() % 2 ? ref[ref.size() / 2]
                              : 0.5 * (ref[ref.size() / 2 - 1] + ref[ref.size() / 2]);
  double r = o.region.w * o.region.h / med;
  return r < 0.6 ? "small" : r > 1.6 ? "big" : "average";
}

TEST(Property, SizeMatchesRecomputationOnRandomScenes) {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Scene s = GenerateScene(seed);
    for (const SceneObject& o : s.objects) {
      EXPECT_EQ(GetFunctionProperty(o, PropertyFunction::kSize, s), SizeByHand(o, s));
    }
  }
}

// ---------------------------------------------------------------------------
// Function properties

TEST(Function, ColorsListAndSingleFields) {
  Scene s = Load("room.json");
  const SceneObject& cat = *s.Find(3);
  EXPECT_EQ(GetFunctionProperty(cat, PropertyFunction::kColors, s), "white, black, grey");
  EXPECT_EQ(GetFunctionProperty(cat, PropertyFunction::kColor, s), "white");
  EXPECT_EQ(GetFunctionProperty(*s.Find(1), PropertyFunction::kGender, s), "male");
  EXPECT_EQ(GetFunctionProperty(*s.Find(1), PropertyFunction::kAge, s), "38-43");
  EXPECT_EQ(GetFunctionProperty(*s.Find(2), PropertyFunction::kType, s), "girl");
  EXPECT_EQ(GetFunctionProperty(cat, PropertyFunction::kType, s), "cat");
}

TEST(Function, AgeOfADogIsNotApplicable) {
  Scene s = MakeScene({Obj(1, "dog", {10, 10, 50, 50})});
  try {
    GetFunctionProperty(s.objects[0], PropertyFunction::kAge, s);
    FAIL();
  } catch (const NotApplicable& e) {
    EXPECT_STREQ(e.what(), "'age' is not applicable to dog");
  }
}

// ---------------------------------------------------------------------------
// Relations

TEST(Relation, CenterComparisons) {
  Scene s = MakeScene({Obj(1, "car", {300, 100, 100, 60}), Obj(2, "bus", {50, 100, 150, 80})});
  EXPECT_TRUE(CheckRelation("right_of", s.objects[0], s.objects[1], s));
  EXPECT_FALSE(CheckRelation("left_of", s.objects[0], s.objects[1], s));
  Scene k = Load("kitchen_clock.json");
  EXPECT_TRUE(CheckRelation("above", *k.Find(2), *k.Find(1), k));
}

TEST(Relation, OnUsesTopBandAndOverlap) {
  Scene s = Load("table_bottle.json");
  EXPECT_TRUE(CheckRelation("on", *s.Find(2), *s.Find(1), s));
  EXPECT_TRUE(CheckRelation("under", *s.Find(1), *s.Find(2), s));
  EXPECT_FALSE(CheckRelation("on", *s.Find(3), *s.Find(1), s));
}

TEST(Relation, DepthGazeTuplesAndContainment) {
  Scene s = MakeScene({Obj(1, "person", {10, 10, 100, 200}), Obj(2, "dog", {50, 100, 40, 40}),
                       Obj(3, "cat", {400, 300, 40, 40})});
  s.objects[0].age = 30;
  s.objects[0].gender = "male";
  s.objects[0].gaze = 3;
  s.objects[0].depth = 2;
  s.objects[1].depth = 5;
  s.relations.push_back({1, "holding", 2});
  EXPECT_TRUE(CheckRelation("looking_at", s.objects[0], s.objects[2], s));
  EXPECT_FALSE(CheckRelation("looking_at", s.objects[0], s.objects[1], s));
  EXPECT_TRUE(CheckRelation("behind", s.objects[1], s.objects[0], s));
  EXPECT_TRUE(CheckRelation("in_front_of", s.objects[0], s.objects[1], s));
  EXPECT_TRUE(CheckRelation("holding", s.objects[0], s.objects[1], s));
  EXPECT_FALSE(CheckRelation("riding", s.objects[0], s.objects[1], s));
  EXPECT_TRUE(CheckRelation("in", s.objects[1], s.objects[0], s));
  EXPECT_TRUE(CheckRelation("touching", s.objects[1], s.objects[0], s));
  EXPECT_FALSE(CheckRelation("touching", s.objects[2], s.objects[0], s));
  EXPECT_THROW(CheckRelation("chasing", s.objects[0], s.objects[1], s), UnknownRelation);
}

// Oracle: color equality on the first stored color.
TEST(Relation, ComparisonRelationsMatchColorEquality) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Scene s = GenerateScene(seed);
    for (const SceneObject& a : s.objects) {
      for (const SceneObject& b : s.objects) {
        bool same = a.colors.front() == b.colors.front();
        EXPECT_EQ(CheckRelation("sim_color", a, b, s), same);
        EXPECT_EQ(CheckRelation("diff_color", a, b, s), !same);
      }
    }
  }
}

// r(X, Y) <=> inverse(r)(Y, X) over every ordered pair of many scenes.
TEST(Relation, InverseCoherenceExhaustive) {
  testing::SweepResult r = testing::InverseCoherence(400);
  EXPECT_EQ(r.violations, 0) << r.first_violation;
  EXPECT_GT(r.checked, 100000);
  EXPECT_GT(r.holding, 10000);
}

TEST(Relation, DeclaredInversesArePaired) {
  for (const RelationInfo& info : RegisteredRelations()) {
    if (info.inverse.empty()) continue;
    auto inv = FindRelation(info.inverse);
    ASSERT_TRUE(inv.has_value()) << info.name;
    EXPECT_EQ(inv->inverse, info.name);
  }
}

// ---------------------------------------------------------------------------
// Search regions

TEST(SearchRegion, OnIsABandAboveTheAnchor) {
  Box table{250, 300, 160, 80};
  auto r = RelationSearchRegion(table, "on", 640, 480);
  ASSERT_TRUE(r.has_value());
  EXPECT_DOUBLE_EQ(r->w, 1.5 * table.w);
  EXPECT_DOUBLE_EQ(r->h, 1.5 * table.h + 0.05 * 480);
  EXPECT_DOUBLE_EQ(r->y, table.y - 1.5 * table.h);
  EXPECT_DOUBLE_EQ(r->cx(), table.cx());
}

TEST(SearchRegion, DegenerateAnchorOnTheLeftEdgeGivesNothing) {
  Box anchor{0, 100, 0, 50};
  EXPECT_FALSE(RelationSearchRegion(anchor, "left_of", 640, 480).has_value());
  EXPECT_TRUE(RelationSearchRegion(anchor, "right_of", 640, 480).has_value());
}

TEST(SearchRegion, NonSpatialRelationsThrow) {
  Box anchor{100, 100, 50, 50};
  EXPECT_THROW(RelationSearchRegion(anchor, "holding", 640, 480), NotDirectional);
  EXPECT_THROW(RelationSearchRegion(anchor, "looking_at", 640, 480), NotDirectional);
  EXPECT_TRUE(RelationSearchRegion(anchor, "behind", 640, 480).has_value());
}

TEST(SearchRegion, PlacementSweep) {
  auto start = std::chrono::steady_clock::now();
  testing::SweepResult r = testing::PlacementSweep();
  EXPECT_EQ(r.violations, 0) << r.first_violation;
  EXPECT_GT(r.holding, 10000);
  EXPECT_GT(r.checked, r.holding);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 30.0);
}

// The sweep must be able to fail: a region that ignores the contact band
// misses on-placements.
TEST(SearchRegion, SweepDetectsAShrunkenRegion) {
  Box table{250, 200, 160, 100};
  auto region = RelationSearchRegion(table, "on", 640, 480);
  ASSERT_TRUE(region.has_value());
  SceneObject anchor = Obj(1, "diningtable", table, {"brown"});
  SceneObject cup = Obj(2, "cup", {300, table.y + 20 - 40, 30, 40});
  Scene s = MakeScene({anchor, cup});
  EXPECT_TRUE(CheckRelation("on", cup, anchor, s));
  Box shrunk = *region;
  shrunk.h = table.y - shrunk.y;  // stop at the anchor's top edge
  EXPECT_TRUE(region->Contains(cup.region.cx(), cup.region.cy()));
  EXPECT_TRUE(shrunk.Contains(cup.region.cx(), cup.region.cy()));
  cup.region.y = table.y + 23 - 10;
  cup.region.h = 10;
  EXPECT_TRUE(CheckRelation("on", cup, anchor, s));
  EXPECT_FALSE(shrunk.Contains(cup.region.cx(), cup.region.cy()));
  EXPECT_TRUE(region->Contains(cup.region.cx(), cup.region.cy()));
}

// ---------------------------------------------------------------------------
// Set properties

TEST(SetProperty, OddBirdOut) {
  Scene s = Load("birds_odd.json");
  std::vector<const SceneObject*> birds;
  for (const auto& o : s.objects) birds.push_back(&o);
  SetResult r = ComputeSetProperty(SetFunction::kDifference, birds, s);
  EXPECT_TRUE(r.found);
  EXPECT_EQ(r.odd_object, 1);
  EXPECT_EQ(r.ToString(), "color (yellow), object center: (95, 325)");
}

TEST(SetProperty, QuantityWithSubgroups) {
  Scene s = Load("animals.json");
  std::vector<const SceneObject*> animals;
  for (const auto& o : s.objects) {
    if (o.cls != "sofa") animals.push_back(&o);
  }
  SetResult r = ComputeSetProperty(SetFunction::kQuantity, animals, s);
  EXPECT_EQ(r.ToString(), "4");
  EXPECT_EQ(r.subgroups, (std::vector<std::pair<std::string, int>>{{"dog", 3}, {"cat", 1}}));
}

TEST(SetProperty, DegenerateSets) {
  Scene s = MakeScene({Obj(1, "dog", {10, 10, 50, 50})});
  std::vector<const SceneObject*> one = {&s.objects[0]};
  EXPECT_EQ(ComputeSetProperty(SetFunction::kDifference, one, s).ToString(), "no difference found");
  EXPECT_EQ(ComputeSetProperty(SetFunction::kSimilarity, one, s).ToString(), "no similarity found");
  EXPECT_EQ(ComputeSetProperty(SetFunction::kQuantity, {}, s).ToString(), "0");
}

TEST(SetProperty, SimilarityFindsSharedColor) {
  Scene s = MakeScene({Obj(1, "dog", {10, 10, 50, 50}, {"red"}), Obj(2, "dog", {100, 10, 200, 150}, {"red"})});
  std::vector<const SceneObject*> both = {&s.objects[0], &s.objects[1]};
  EXPECT_EQ(ComputeSetProperty(SetFunction::kSimilarity, both, s).ToString(), "color (red)");
}

TEST(SetProperty, InvariantUnderReordering) {
  std::mt19937 rng(11);
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Scene s = GenerateScene(seed);
    std::vector<const SceneObject*> objs;
    for (const auto& o : s.objects) objs.push_back(&o);
    for (SetFunction g : {SetFunction::kQuantity, SetFunction::kDifference, SetFunction::kSimilarity}) {
      std::string base = ComputeSetProperty(g, objs, s).ToString();
      for (int k = 0; k < 3; ++k) {
        std::shuffle(objs.begin(), objs.end(), rng);
        EXPECT_EQ(ComputeSetProperty(g, objs, s).ToString(), base) << "seed " << seed;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Sub-objects

TEST(SubObjects, ShirtBandAndNamedParts) {
  Scene s = MakeScene({Person(7, {100, 100, 80, 240}, 30, "male")});
  s.objects[0].parts.push_back({"wheel", {110, 300, 20, 20}, {"black"}});
  auto shirts = SubObjects(s, "shirt", {&s.objects[0]});
  ASSERT_EQ(shirts.size(), 1u);
  EXPECT_EQ(shirts[0].id, kDerivedIdBase + 7 * 100 + 50);
  EXPECT_EQ(shirts[0].host, 7);
  EXPECT_TRUE(s.objects[0].region.Contains(shirts[0].region));
  auto wheels = SubObjects(s, "wheel", {&s.objects[0]});
  ASSERT_EQ(wheels.size(), 1u);
  EXPECT_EQ(wheels[0].colors, (std::vector<std::string>{"black"}));
  EXPECT_TRUE(CheckRelation("part_of", wheels[0], s.objects[0], s));
  auto middle = SubObjects(s, "middle", {&s.objects[0]});
  ASSERT_EQ(middle.size(), 1u);
  EXPECT_DOUBLE_EQ(middle[0].region.cx(), s.objects[0].region.cx());
}

// ---------------------------------------------------------------------------
// Scene files

TEST(SceneFile, JsonRoundTrip) {
  SceneConfig config;
  config.region_only = 0.5;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Scene s = GenerateScene(seed, config);
    s.objects[0].parts.push_back({"wheel", {s.objects[0].region.x, s.objects[0].region.y, 1, 1}, {"red"}});
    s.objects[0].detectability = Detectability::RegionOnly(0.3);
    EXPECT_EQ(ParseScene(SceneToJson(s)), s);
  }
}

TEST(SceneFile, FixturesValidate) {
  for (const char* name : {"dogs_scoping.json", "birds_odd.json", "table_bottle.json", "kitchen_clock.json",
                           "bus_only.json", "bottle_dog.json", "dogs_cat.json", "people.json",
                           "dog_chair.json", "two_birds.json", "animals.json", "horse.json",
                           "furniture.json", "room.json"}) {
    EXPECT_NO_THROW(Load(name)) << name;
  }
}

TEST(SceneFile, ValidatorRejectsBrokenScenes) {
  auto bad = [](const std::string& objects, const std::string& extra = "") {
    return R"({"format":"cqa.scene.v1","width":100,"height":100,"objects":[)" + objects + "]" +
           extra + "}";
  };
  std::string ok = R"({"id":1,"class":"dog","region":{"x":0,"y":0,"w":10,"h":10},"colors":["red"]})";
  EXPECT_NO_THROW(ParseScene(bad(ok)));
  EXPECT_THROW(ParseScene(bad(ok + "," + ok)), SceneError);
  EXPECT_THROW(ParseScene(bad(R"({"id":1,"class":"dog","region":{"x":95,"y":0,"w":10,"h":10},"colors":["red"]})")),
               SceneError);
  EXPECT_THROW(ParseScene(bad(R"({"id":1,"class":"dog","region":{"x":0,"y":0,"w":10,"h":10},"colors":["mauve"]})")),
               SceneError);
  EXPECT_THROW(ParseScene(bad(R"({"id":1,"class":"dog","age":3,"gender":"male","region":{"x":0,"y":0,"w":10,"h":10},"colors":["red"]})")),
               SceneError);
  EXPECT_THROW(ParseScene(bad(R"({"id":1,"class":"person","region":{"x":0,"y":0,"w":10,"h":10},"colors":["red"]})")),
               SceneError);
  EXPECT_THROW(ParseScene(bad(R"({"id":1,"class":"dog","gaze":9,"region":{"x":0,"y":0,"w":10,"h":10},"colors":["red"]})")),
               SceneError);
  EXPECT_THROW(ParseScene(bad(ok, R"(,"relations":[{"subject":1,"relation":"on","object":4}])")),
               SceneError);
  EXPECT_THROW(ParseScene(R"({"width":100,"height":100,"objects":[]})"), SceneError);
  EXPECT_THROW(ParseScene("{not json"), SceneError);
  EXPECT_THROW(LoadScene("/nonexistent/scene.json"), IoError);
}

TEST(SceneFile, GeneratedScenesValidate) {
  SceneConfig config;
  config.region_only = 0.2;
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    ASSERT_NO_THROW(ValidateScene(GenerateScene(seed, config))) << seed;
  }
}

// ---------------------------------------------------------------------------
// Detector profile

TEST(Profile, ShippedFileEqualsBuiltIn) {
  DetectorProfile file = DetectorProfile::Load(std::string(CQA_DATA_DIR) + "/profile.json");
  EXPECT_EQ(file.known_classes, DetectorProfile::Default().known_classes);
  EXPECT_DOUBLE_EQ(file.default_alpha, DetectorProfile::Default().default_alpha);
  EXPECT_FALSE(file.Knows("shelf"));
  EXPECT_THROW(DetectorProfile::Parse(R"({"known_classes": []})"), FormatError);
}

}  // namespace
}  // namespace cqa
