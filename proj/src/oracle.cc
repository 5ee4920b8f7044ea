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

#include "cqa/oracle.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "cqa/errors.h"
#include "cqa/lexicon.h"
#include "cqa/text.h"
#include "cqa/vocabulary.h"
#include "cqa/world.h"

namespace cqa {
namespace {

// ---------------------------------------------------------------------------
// Reference evaluation

struct Members {
  bool subordinate = false;
  int min_count = 1;
  std::vector<int> ids;
};

class Reference {
 public:
  Reference(const QuestionGraph& g, const Scene& s, const KnowledgeBase& kb)
      : g_(g), scene_(s), kb_(kb) {
    for (const SceneObject& o : scene_.objects) objects_[o.id] = &o;
  }

  std::string Answer();

 private:
  const SceneObject& Obj(int id) const { return *objects_.at(id); }
  std::vector<std::string> Heads(const std::string& name, KbRelation rel) const;
  std::vector<std::string> Strongest(const std::string& name, KbRelation rel) const;
  Members Resolve(const std::string& name);
  std::vector<int> Domain(int m, const std::vector<int>& path) const;
  std::vector<int> Satisfying(int m, int parent, int x, std::vector<int>& path);
  bool Holds(int m, int parent, int x, std::vector<int>& path);
  void Witness(int m, int parent, int x, std::vector<int>& path);
  std::vector<int> Neighbors(int m, int parent) const;
  const RelationEdge& EdgeBetween(int a, int b) const;

  const QuestionGraph& g_;
  const Scene& scene_;
  const KnowledgeBase& kb_;
  std::map<int, const SceneObject*> objects_;
  std::vector<SceneObject> parts_;
  std::map<int, Members> members_;
  std::map<int, std::set<int>> witnesses_;
};

std::vector<std::string> Reference::Heads(const std::string& name, KbRelation rel) const {
  std::vector<std::string> out;
  for (const KnowledgeTriple& t : kb_.triples()) {
    if (t.relation == rel && t.tail == name && t.weight >= kb_.weight_floor) out.push_back(t.head);
  }
  return out;
}

// Classes linked either way, heaviest first; equal weights alphabetically.
std::vector<std::string> Reference::Strongest(const std::string& name, KbRelation rel) const {
  std::map<std::string, double> w;
  for (const KnowledgeTriple& t : kb_.triples()) {
    if (t.relation != rel || t.weight < kb_.weight_floor) continue;
    if (t.tail == name) w[t.head] = std::max(w[t.head], t.weight);
    if (t.head == name) w[t.tail] = std::max(w[t.tail], t.weight);
  }
  std::vector<std::pair<std::string, double>> v(w.begin(), w.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(p.first);
  return out;
}

Members Reference::Resolve(const std::string& name) {
  Members m;
  auto of_classes = [&](const std::vector<std::string>& classes) {
    for (const SceneObject& o : scene_.objects) {
      if (std::find(classes.begin(), classes.end(), o.cls) != classes.end()) m.ids.push_back(o.id);
    }
  };
  if (name.empty()) {
    for (const SceneObject& o : scene_.objects) m.ids.push_back(o.id);
  } else if (std::any_of(scene_.objects.begin(), scene_.objects.end(),
                         [&](const SceneObject& o) { return o.cls == name; })) {
    of_classes({name});
  } else {
    const auto& subs = PersonSubclasses();
    std::string sub;
    if (std::find(subs.begin(), subs.end(), name) != subs.end()) {
      sub = name;
    } else {
      for (const std::string& c : Strongest(name, KbRelation::kSynonym)) {
        if (std::find(subs.begin(), subs.end(), c) != subs.end()) {
          sub = c;
          break;
        }
      }
    }
    std::vector<std::string> syn = Strongest(name, KbRelation::kSynonym);
    std::vector<std::string> sim = Strongest(name, KbRelation::kSimilarTo);
    std::vector<std::string> heads;
    for (KbRelation r : {KbRelation::kIsA, KbRelation::kInstanceOf, KbRelation::kMadeOf,
                         KbRelation::kPartOf}) {
      for (const std::string& h : Heads(name, r)) heads.push_back(h);
    }
    std::vector<std::string> group = Heads(name, KbRelation::kMemberOf);
    if (!sub.empty()) {
      m.subordinate = true;
      for (const SceneObject& o : scene_.objects) {
        if (IsPersonSubclass(o, sub)) m.ids.push_back(o.id);
      }
    } else if (!syn.empty()) {
      of_classes({syn.front()});
    } else if (!sim.empty()) {
      of_classes({sim.front()});
    } else if (!heads.empty()) {
      of_classes(heads);
    } else if (!group.empty()) {
      m.min_count = 2;
      of_classes(group);
    } else {
      std::vector<const SceneObject*> hosts;
      std::vector<std::string> host_classes;
      for (const KnowledgeTriple& t : kb_.triples()) {
        if (t.relation == KbRelation::kPartOf && t.head == name && t.weight >= kb_.weight_floor) {
          host_classes.push_back(t.tail);
        }
      }
      if (name == "shirt") host_classes.push_back("person");
      for (const SceneObject& o : scene_.objects) {
        bool host = IsAreaWord(name) || std::find(host_classes.begin(), host_classes.end(),
                                                  o.cls) != host_classes.end();
        if (host) hosts.push_back(&o);
      }
      for (SceneObject& p : SubObjects(scene_, name, hosts)) {
        m.ids.push_back(p.id);
        parts_.push_back(std::move(p));
      }
    }
  }
  std::sort(m.ids.begin(), m.ids.end());
  return m;
}

std::vector<int> Reference::Neighbors(int m, int parent) const {
  std::vector<int> out;
  for (const RelationEdge& e : g_.edges) {
    if (e.from == m && e.to != parent) out.push_back(e.to);
    if (e.to == m && e.from != parent) out.push_back(e.from);
  }
  return out;
}

const RelationEdge& Reference::EdgeBetween(int a, int b) const {
  for (const RelationEdge& e : g_.edges) {
    if ((e.from == a && e.to == b) || (e.from == b && e.to == a)) return e;
  }
  throw Error("no edge");
}

std::vector<int> Reference::Domain(int m, const std::vector<int>& path) const {
  const ObjectNode& n = *g_.Find(m);
  std::vector<int> out;
  for (int y : members_.at(m).ids) {
    if (std::find(path.begin(), path.end(), y) != path.end()) continue;
    bool ok = true;
    for (const auto& p : n.restrictions) ok = ok && CheckPredicateProperty(Obj(y), p.name, scene_);
    if (ok) out.push_back(y);
  }
  return out;
}

std::vector<int> Reference::Satisfying(int m, int parent, int x, std::vector<int>& path) {
  const ObjectNode& n = *g_.Find(m);
  std::vector<int> out;
  for (int y : Domain(m, path)) {
    bool ok = true;
    if (parent != 0) {
      const RelationEdge& e = EdgeBetween(m, parent);
      ok = e.from == m ? CheckRelation(e.relation, Obj(y), Obj(x), scene_)
                       : CheckRelation(e.relation, Obj(x), Obj(y), scene_);
    }
    for (const auto& p : n.checks) ok = ok && CheckPredicateProperty(Obj(y), p.name, scene_);
    if (ok) {
      path.push_back(y);
      for (int c : Neighbors(m, parent)) ok = ok && Holds(c, m, y, path);
      path.pop_back();
    }
    if (ok) out.push_back(y);
  }
  return out;
}

bool Reference::Holds(int m, int parent, int x, std::vector<int>& path) {
  const Quantifier& q = g_.Find(m)->quantifier;
  int floor = members_.at(m).min_count;
  size_t s = Satisfying(m, parent, x, path).size();
  size_t d = Domain(m, path).size();
  switch (q.kind) {
    case Quantifier::Kind::kExists:
      return s >= static_cast<size_t>(std::max(1, floor));
    case Quantifier::Kind::kAtLeast:
      return s >= static_cast<size_t>(std::max(q.n, floor));
    case Quantifier::Kind::kForAll:
      return d >= static_cast<size_t>(std::max(1, floor)) && s == d;
  }
  return false;
}

void Reference::Witness(int m, int parent, int x, std::vector<int>& path) {
  for (int y : Satisfying(m, parent, x, path)) {
    witnesses_[m].insert(y);
    path.push_back(y);
    for (int c : Neighbors(m, parent)) Witness(c, m, y, path);
    path.pop_back();
  }
}

std::string Reference::Answer() {
  if (g_.nodes.size() > static_cast<size_t>(kOracleMaxNodes)) {
    throw BoundExceeded("graph has " + std::to_string(g_.nodes.size()) + " nodes");
  }
  if (scene_.objects.size() > static_cast<size_t>(kOracleMaxObjects)) {
    throw BoundExceeded("scene has " + std::to_string(scene_.objects.size()) + " objects");
  }
  for (const ObjectNode& n : g_.nodes) {
    for (const auto& p : n.restrictions) {
      if (!IsSupportedProperty(p.name)) return "unknown property '" + p.name + "'";
    }
    for (const auto& p : n.checks) {
      if (!IsSupportedProperty(p.name)) return "unknown property '" + p.name + "'";
    }
  }
  for (const RelationEdge& e : g_.edges) {
    if (!IsKnownRelation(e.relation)) return "unknown relation '" + e.relation + "'";
  }
  for (const ObjectNode& n : g_.nodes) members_[n.id] = Resolve(n.cls);
  for (const SceneObject& p : parts_) objects_[p.id] = &p;
  for (const ObjectNode& n : g_.nodes) {
    const Members& m = members_[n.id];
    if (!m.ids.empty()) continue;
    if (m.subordinate) return "Couldn't find any object of class: " + n.cls;
    return "There is no " + (n.cls.empty() ? std::string("object") : n.cls);
  }

  bool satisfied = true;
  for (int root : g_.Roots()) {
    std::vector<int> path;
    satisfied = satisfied && Holds(root, 0, 0, path);
  }
  const QueryTarget& t = g_.target;
  if (t.kind == QueryTarget::Kind::kExistence) return satisfied ? "yes" : "no";
  if (satisfied) {
    for (int root : g_.Roots()) {
      std::vector<int> path;
      Witness(root, 0, 0, path);
    }
  }
  std::vector<const SceneObject*> found;
  for (int id : witnesses_[t.variable]) found.push_back(&Obj(id));

  if (t.kind == QueryTarget::Kind::kSetValue) {
    return ComputeSetProperty(*ParseSetFunction(t.function), found, scene_).ToString();
  }
  if (found.empty()) return "nothing";
  std::vector<std::string> values;
  std::string refusal;
  for (const SceneObject* o : found) {
    std::string v;
    if (t.kind == QueryTarget::Kind::kClass) {
      v = o->cls;
    } else {
      try {
        v = GetFunctionProperty(*o, *ParsePropertyFunction(t.function), scene_);
      } catch (const NotApplicable& e) {
        if (refusal.empty()) refusal = e.what();
        continue;
      }
    }
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  }
  return values.empty() ? refusal : Join(values, ", ");
}

// ---------------------------------------------------------------------------
// Generators

using Rng = std::mt19937_64;

int Uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool Chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<size_t>(Uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

const std::vector<std::string>& DefaultPool() {
  static const std::vector<std::string> pool = {
      "person", "person", "dog", "cat", "bird", "horse", "sheep", "car", "bus",
      "bicycle", "chair", "sofa", "diningtable", "bottle", "cup", "tvmonitor"};
  return pool;
}

std::string Article(const std::string& w) {
  return std::string("aeiou").find(w[0]) != std::string::npos ? "an" : "a";
}

class QuestionMaker {
 public:
  QuestionMaker(uint64_t seed, const Scene& scene)
      : rng_(seed), scene_(scene), lex_(Lexicon::Default()) {}

  std::string Make();

 private:
  const SceneObject& AnyObject() { return Pick(rng_, scene_.objects); }

  // A noun covering o, or one absent from the scene.
  std::string Name(const SceneObject* o);
  std::string Adjective(const SceneObject* o);
  // Half the time a relation that holds from a to b.
  std::string Relation(const SceneObject& a, const SceneObject& b);
  std::string Number() { return Pick(rng_, std::vector<std::string>{"two", "three", "four"}); }
  std::string Plural(const std::string& n) { return lex_.Plural(n); }
  std::string A(const std::string& adj, const std::string& noun) {
    std::string np = adj.empty() ? noun : adj + " " + noun;
    return Article(np) + " " + np;
  }

  Rng rng_;
  const Scene& scene_;
  const Lexicon& lex_;
};

std::string QuestionMaker::Name(const SceneObject* o) {
  static const std::vector<std::string> absent = {"train", "elephant", "giraffe", "zebra",
                                                  "kite",  "laptop",   "umbrella", "clock"};
  if (o == nullptr || Chance(rng_, 0.15)) return Pick(rng_, absent);
  if (Chance(rng_, 0.6)) return o->cls;
  static const std::map<std::string, std::vector<std::string>> aliases = {
      {"dog", {"hound", "animal", "pet"}},     {"cat", {"animal", "pet", "kitten"}},
      {"bird", {"animal", "flock"}},           {"horse", {"animal"}},
      {"sheep", {"animal", "flock", "herd"}},  {"car", {"vehicle", "fleet"}},
      {"bus", {"vehicle"}},                    {"bicycle", {"bike", "vehicle"}},
      {"chair", {"furniture"}},                {"sofa", {"couch", "furniture"}},
      {"diningtable", {"table", "furniture"}}, {"tvmonitor", {"tv", "screen"}},
      {"person", {"man", "woman", "child", "people"}},
  };
  auto it = aliases.find(o->cls);
  if (it == aliases.end()) return o->cls;
  std::string n = Pick(rng_, it->second);
  if (n == "people") return "person";
  if (o->cls == "person" && Chance(rng_, 0.5)) return PersonType(*o);
  return n;
}

std::string QuestionMaker::Adjective(const SceneObject* o) {
  static const std::vector<std::string> all = {
      "red",  "green", "blue", "yellow", "black",  "white", "brown", "gray", "orange",
      "pink", "purple", "small", "big",  "top",    "bottom", "male", "female", "young",
      "old",  "adult"};
  if (Chance(rng_, 0.04)) return Pick(rng_, std::vector<std::string>{"tall", "wooden", "shiny"});
  if (o != nullptr && Chance(rng_, 0.6)) {
    if (!o->colors.empty() && Chance(rng_, 0.7)) return Pick(rng_, o->colors);
    std::string size = SizeOf(*o, scene_);
    if (size != "average") return size;
  }
  return Pick(rng_, all);
}

std::string QuestionMaker::Relation(const SceneObject& a, const SceneObject& b) {
  static const std::vector<std::string> phrases = {
      "to the left of", "to the right of", "above",   "below",      "on",
      "under",          "behind",          "in front of", "near",   "touching",
      "looking at",     "holding",         "riding"};
  if (Chance(rng_, 0.03)) return "chasing";
  if (a.id != b.id && Chance(rng_, 0.5)) {
    std::vector<std::string> holding;
    for (const std::string& p : phrases) {
      if (CheckRelation(lex_.Find(p)->canonical, a, b, scene_)) holding.push_back(p);
    }
    if (!holding.empty()) return Pick(rng_, holding);
  }
  return Pick(rng_, phrases);
}

std::string QuestionMaker::Make() {
  // Every random draw happens here, in a fixed order, before any text is
  // assembled.
  const SceneObject& o1 = AnyObject();
  const SceneObject& o2 = AnyObject();
  const SceneObject& o3 = AnyObject();
  const SceneObject& o4 = AnyObject();
  std::string n1 = Name(&o1), n2 = Name(&o2), n3 = Name(&o3), n4 = Name(&o4);
  std::string adj = Chance(rng_, 0.5) ? Adjective(&o1) : "";
  std::string adj2 = Adjective(&o1), adj3 = Adjective(&o1);
  std::string r12 = Relation(o1, o2), r23 = Relation(o2, o3), r34 = Relation(o3, o4);
  std::string r13 = Relation(o1, o3), r21 = Relation(o2, o1);
  std::string num = Number();
  std::string pl = adj.empty() ? Plural(n1) : adj + " " + Plural(n1);
  int function_form = Uniform(rng_, 0, 4);
  bool difference = Chance(rng_, 0.5);
  static const std::vector<std::string> kFunctionForms = {
      "What color is the ", "What size is the ", "What is the age of the ",
      "What is the gender of the ", "Where is the "};
  switch (Uniform(rng_, 0, 15)) {
    case 0:
      return "Is there " + A(adj, n1) + "?";
    case 1:
      return "Are there " + num + " " + pl + "?";
    case 2:
      return "Are all " + Plural(n1) + " " + adj2 + "?";
    case 3:
      return "Are all " + adj2 + " " + Plural(n1) + " " + adj3 + "?";
    case 4:
      return "Is there " + A(adj, n1) + " " + r12 + " " + A("", n2) + "?";
    case 5:
      return "Is there " + A("", n1) + " " + r12 + " " + A("", n2) + " " + r23 + " " + A("", n3) +
             "?";
    case 6:
      return "Are there " + num + " " + Plural(n1) + " " + r12 + " the " + n2 + "?";
    case 7:
      return "Are all " + Plural(n1) + " " + r12 + " " + A("", n2) + "?";
    case 8:
      return "What color is the " + n1 + " " + r12 + " the " + n2 + "?";
    case 9:
      return kFunctionForms[static_cast<size_t>(function_form)] + n1 + "?";
    case 10:
      return "How many " + pl + " are there?";
    case 11:
      return "How many " + Plural(n1) + " are " + r12 + " the " + n2 + "?";
    case 12:
      return difference ? "How is one " + n1 + " not like the others?"
                        : "What is similar for the " + Plural(n1) + "?";
    case 13:
      return "What is " + r21 + " the " + n1 + "?";
    case 14:
      return "Is there " + A("", n1) + " " + r12 + " " + A("", n2) + " " + r23 + " " + A("", n3) +
             " " + r34 + " " + A("", n4) + "?";
    default:
      return "Are there " + num + " " + Plural(n1) + " that are " + r12 + " " + A("", n2) +
             " and " + r13 + " " + A("", n3) + "?";
  }
}

}  // namespace

std::string OracleAnswer(const QuestionGraph& graph, const Scene& scene, const KnowledgeBase& kb) {
  return Reference(graph, scene, kb).Answer();
}

Scene GenerateScene(uint64_t seed, const SceneConfig& config) {
  Rng rng(seed);
  const std::vector<std::string>& pool = config.classes.empty() ? DefaultPool() : config.classes;
  Scene s;
  s.width = 640;
  s.height = 480;
  int n = Uniform(rng, config.min_objects, std::max(config.min_objects, config.max_objects));
  auto colors = ColorNames();
  std::vector<std::string> palette(colors.begin(), colors.end());
  for (int i = 0; i < n; ++i) {
    SceneObject o;
    o.id = i + 1;
    o.cls = Pick(rng, pool);
    int w = Uniform(rng, 30, 200), h = Uniform(rng, 30, 200);
    // Centers at least 8 px apart.
    for (int attempt = 0; attempt < 200; ++attempt) {
      o.region = {static_cast<double>(Uniform(rng, 0, 640 - w)),
                  static_cast<double>(Uniform(rng, 0, 480 - h)), static_cast<double>(w),
                  static_cast<double>(h)};
      bool clear = std::all_of(s.objects.begin(), s.objects.end(), [&](const SceneObject& other) {
        return std::hypot(other.region.cx() - o.region.cx(), other.region.cy() - o.region.cy()) >= 8;
      });
      if (clear) break;
    }
    o.depth = Uniform(rng, 0, 100) / 10.0;
    o.colors.push_back(Pick(rng, palette));
    if (Chance(rng, 0.3)) {
      std::string second = Pick(rng, palette);
      if (second != o.colors.front()) o.colors.push_back(second);
    }
    if (o.cls == "person") {
      o.age = Uniform(rng, 0, 80);
      o.gender = Chance(rng, 0.5) ? "male" : "female";
    }
    if (Chance(rng, config.region_only)) o.detectability = Detectability::RegionOnly(std::nullopt);
    s.objects.push_back(std::move(o));
  }
  for (SceneObject& o : s.objects) {
    bool animate = o.cls == "person" || o.cls == "dog" || o.cls == "cat" || o.cls == "bird" ||
                   o.cls == "horse";
    if (animate && n > 1 && Chance(rng, 0.4)) {
      int target = Uniform(rng, 1, n);
      if (target != o.id) o.gaze = target;
    }
    if (o.cls == "person" && n > 1 && Chance(rng, 0.3)) {
      int target = Uniform(rng, 1, n);
      if (target != o.id) {
        s.relations.push_back({o.id, Pick(rng, std::vector<std::string>{"holding", "riding"}), target});
      }
    }
  }
  ValidateScene(s);
  return s;
}

std::string GenerateQuestion(uint64_t seed, const Scene& scene) {
  if (scene.objects.empty()) return "Is there a dog?";
  return QuestionMaker(seed, scene).Make();
}

}  // namespace cqa
