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

#include "cqa/engine.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "cqa/errors.h"
#include "cqa/text.h"

namespace cqa {
namespace {

using Kind = ClassResolution::Kind;

std::string Article(std::string_view noun) {
  return (!noun.empty() && std::string_view("aeiou").find(noun[0]) != std::string_view::npos)
             ? "an"
             : "a";
}

bool Contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

int Need(const Quantifier& q, int min_count) {
  return std::max(q.kind == Quantifier::Kind::kAtLeast ? q.n : 1, min_count);
}

// Checks that need only the object itself run before the ones that compare
// it with the rest of the scene; question order within each tier.
std::vector<const PredicateProperty*> CheckOrder(const std::vector<PredicateProperty>& checks) {
  std::vector<const PredicateProperty*> out;
  for (int tier = 0; tier < 2; ++tier) {
    for (const PredicateProperty& p : checks) {
      bool contextual = p.group == PropertyGroup::kSize || p.group == PropertyGroup::kRelativeLocation;
      if (contextual == (tier == 1)) out.push_back(&p);
    }
  }
  return out;
}

struct Hint {
  std::string cls;
  std::string description;
  bool operator==(const Hint&) const = default;
};

class Evaluation {
 public:
  Evaluation(const Engine& engine, const QuestionGraph& graph, const Scene& scene)
      : engine_(engine), opt_(engine.options()), graph_(graph), scene_(scene) {}

  Answer Run();

 private:
  struct Result {
    std::vector<int> sat;
    int domain = 0;
    bool ok = false;
  };

  const SceneObject& Obj(int id) const;
  std::string Noun(int node) const;
  std::string Counted(int n, const std::string& noun) const;
  std::string Plural(const std::string& noun) const { return engine_.lexicon().Plural(noun); }

  const std::vector<Detection>& Detections(const std::string& cls);
  const std::vector<int>& Candidates(int node);
  void AddDetections(const std::vector<Detection>& found);
  bool Property(int y, const std::string& p);
  bool EdgeHolds(const RelationEdge& e, int node, int x, int y);
  int Other(const RelationEdge& e, int node) const { return e.from == node ? e.to : e.from; }

  void Guide(int node, const std::vector<std::pair<const RelationEdge*, int>>& anchors);
  void GuideRoot(int root);
  Result Eval(int node, int parent, int x, const RelationEdge* via, std::vector<int>& path);
  void Collect(int node, int parent, int x, const RelationEdge* via, std::vector<int>& path);

  std::optional<std::string> Limitation() const;
  std::optional<std::string> NoObjectNotice(int* node_out);
  std::string Fragment(PatternInstance::Kind k, int node, const std::string& element) const;

  std::string Value(std::string* summary, Answer* answer);
  std::string Description(int node, bool proper) const;
  void ExplainFailure(int root, Answer* answer);
  void ClassAlternatives(int node, Answer* answer);
  void Elaborate(Answer* answer);

  const Engine& engine_;
  const EngineOptions& opt_;
  QuestionGraph graph_;
  const Scene& scene_;
  std::map<int, ClassResolution> res_;
  std::map<std::string, std::vector<Detection>> detections_;
  std::map<int, std::vector<int>> candidates_;
  std::map<int, SceneObject> derived_;
  std::map<std::pair<int, std::string>, bool> property_cache_;
  std::map<std::tuple<std::string, int, int>, bool> relation_cache_;
  std::map<std::tuple<int, int, std::vector<int>>, Result> memo_;
  std::set<std::tuple<int, int, const RelationEdge*>> guided_;
  std::set<int> prior_guided_;
  std::vector<Hint> hints_;
  std::map<int, Result> root_results_;
  std::map<int, std::set<int>> valid_;
  std::vector<TraceEntry> trace_;
  std::vector<PatternInstance> fragments_;
  bool collect_ = false;
  bool tracing_ = true;
};

const SceneObject& Evaluation::Obj(int id) const {
  if (auto it = derived_.find(id); it != derived_.end()) return it->second;
  const SceneObject* o = scene_.Find(id);
  if (o == nullptr) throw Error("no object " + std::to_string(id));
  return *o;
}

std::string Evaluation::Noun(int node) const {
  const std::string& c = graph_.Find(node)->cls;
  return c.empty() ? "object" : c;
}

std::string Evaluation::Counted(int n, const std::string& noun) const {
  if (n == 1) return Article(noun) + " " + noun;
  return std::to_string(n) + " " + Plural(noun);
}

const std::vector<Detection>& Evaluation::Detections(const std::string& cls) {
  auto it = detections_.find(cls);
  if (it == detections_.end()) {
    it = detections_.emplace(cls, Detect(scene_, {cls}, std::nullopt, engine_.profile())).first;
  }
  return it->second;
}

const std::vector<int>& Evaluation::Candidates(int node) {
  if (auto it = candidates_.find(node); it != candidates_.end()) return it->second;
  const ClassResolution& r = res_.at(node);
  std::vector<int> out;
  if (r.kind == Kind::kSubObject) {
    std::vector<const SceneObject*> hosts;
    for (const std::string& h : r.members) {
      for (const Detection& d : Detections(h)) hosts.push_back(&Obj(d.object_id));
    }
    std::sort(hosts.begin(), hosts.end(),
              [](const SceneObject* a, const SceneObject* b) { return a->id < b->id; });
    for (SceneObject& o : SubObjects(scene_, r.name, hosts)) {
      out.push_back(o.id);
      derived_[o.id] = std::move(o);
    }
  } else if (r.kind != Kind::kUnknown) {
    for (const std::string& m : r.members) {
      for (const Detection& d : Detections(m)) {
        if (r.kind == Kind::kSubordinate && !IsPersonSubclass(Obj(d.object_id), r.link)) continue;
        out.push_back(d.object_id);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return candidates_[node] = std::move(out);
}

void Evaluation::AddDetections(const std::vector<Detection>& found) {
  bool changed = false;
  for (const Detection& d : found) {
    auto& list = detections_[d.cls];
    if (std::any_of(list.begin(), list.end(),
                    [&](const Detection& e) { return e.object_id == d.object_id; })) {
      continue;
    }
    list.push_back(d);
    std::sort(list.begin(), list.end(),
              [](const Detection& a, const Detection& b) { return a.object_id < b.object_id; });
    Hint h{d.cls, d.via_hint};
    if (std::find(hints_.begin(), hints_.end(), h) == hints_.end()) hints_.push_back(h);
    changed = true;
  }
  if (changed) {
    candidates_.clear();
    memo_.clear();
  }
}

bool Evaluation::Property(int y, const std::string& p) {
  auto key = std::make_pair(y, p);
  if (auto it = property_cache_.find(key); it != property_cache_.end()) return it->second;
  return property_cache_[key] = CheckPredicateProperty(Obj(y), p, scene_);
}

// x is bound to the parent node, y to node.
bool Evaluation::EdgeHolds(const RelationEdge& e, int node, int x, int y) {
  int a = e.from == node ? y : x;
  int b = e.from == node ? x : y;
  auto key = std::make_tuple(e.relation, a, b);
  if (auto it = relation_cache_.find(key); it != relation_cache_.end()) return it->second;
  return relation_cache_[key] = CheckRelation(e.relation, Obj(a), Obj(b), scene_);
}

void Evaluation::Guide(int node, const std::vector<std::pair<const RelationEdge*, int>>& anchors) {
  if (!opt_.guided_detection) return;
  const ClassResolution& r = res_.at(node);
  if (r.kind == Kind::kAny || r.kind == Kind::kSubObject || r.kind == Kind::kUnknown) return;
  const DetectorProfile& profile = engine_.profile();
  std::vector<Detection> found;
  for (const auto& [edge, anchor] : anchors) {
    if (!guided_.insert({node, anchor, edge}).second) continue;
    const SceneObject& a = Obj(anchor);
    // The node is the subject of the stated relation, or its object.
    std::string rel = edge->relation;
    if (edge->to == node) {
      auto info = FindRelation(rel);
      if (!info || info->inverse.empty()) continue;
      rel = info->inverse;
    }
    std::optional<Box> region;
    try {
      region = RelationSearchRegion(a.region, rel, scene_.width, scene_.height);
    } catch (const NotDirectional&) {
      continue;
    }
    if (!region) continue;
    for (const std::string& cls : r.members) {
      for (Detection d : Detect(scene_, {cls}, region, profile)) {
        if (r.kind == Kind::kSubordinate && !IsPersonSubclass(Obj(d.object_id), r.link)) continue;
        const SceneObject& y = Obj(d.object_id);
        bool holds = edge->from == node ? CheckRelation(edge->relation, y, a, scene_)
                                        : CheckRelation(edge->relation, a, y, scene_);
        if (!holds) continue;
        d.via_hint = RelationPhrase(rel) + " " + a.cls;
        found.push_back(d);
      }
    }
  }
  if (found.empty() && prior_guided_.insert(node).second) {
    for (const std::string& cls : r.members) {
      auto prior = BestPrior(cls, engine_.priors(), profile.known_classes);
      if (!prior) continue;
      for (const Detection& partner : Detections(prior->object)) {
        Box region = Intersect(PriorRegion(*prior, partner.region), scene_.bounds());
        if (region.empty()) continue;
        for (Detection d : Detect(scene_, {cls}, region, profile)) {
          if (r.kind == Kind::kSubordinate && !IsPersonSubclass(Obj(d.object_id), r.link)) continue;
          if (!CheckRelation(prior->relation, Obj(d.object_id), Obj(partner.object_id), scene_)) {
            continue;
          }
          d.via_hint = RelationPhrase(prior->relation) + " " + partner.cls;
          found.push_back(d);
        }
      }
    }
  }
  AddDetections(found);
}

void Evaluation::GuideRoot(int root) {
  if (!Candidates(root).empty()) return;
  std::vector<std::pair<const RelationEdge*, int>> anchors;
  for (const RelationEdge& e : graph_.edges) {
    if (e.traversal != Traversal::kReversed || e.sink() != root) continue;
    for (int a : Candidates(e.source())) anchors.emplace_back(&e, a);
  }
  Guide(root, anchors);
}

Evaluation::Result Evaluation::Eval(int node, int parent, int x, const RelationEdge* via,
                                    std::vector<int>& path) {
  auto key = std::make_tuple(node, x, path);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (via != nullptr && Candidates(node).empty()) Guide(node, {{via, x}});
  const ObjectNode& n = *graph_.Find(node);
  const ClassResolution& res = res_.at(node);
  std::vector<int> cands = Candidates(node);

  std::vector<const PredicateProperty*> restrictions = CheckOrder(n.restrictions);
  std::vector<const PredicateProperty*> checks = CheckOrder(n.checks);
  std::vector<int> domain;
  std::vector<int> restriction_pass(restrictions.size(), 0);
  for (int y : cands) {
    if (Contains(path, y)) continue;
    bool ok = true;
    for (size_t i = 0; i < restrictions.size() && ok; ++i) {
      ok = Property(y, restrictions[i]->name);
      if (ok) ++restriction_pass[i];
    }
    if (ok) domain.push_back(y);
  }

  Result r;
  r.domain = static_cast<int>(domain.size());
  int need = Need(n.quantifier, res.min_count);
  bool forall = n.quantifier.kind == Quantifier::Kind::kForAll;
  std::vector<size_t> children = graph_.ChildEdges(node, parent);
  int rel_tried = 0, rel_ok = 0;
  std::vector<int> check_tried(checks.size(), 0), check_ok(checks.size(), 0);
  bool hopeless = forall && r.domain < need;
  for (size_t i = 0; i < domain.size() && !(hopeless && !collect_); ++i) {
    if (!collect_) {
      if (!forall && static_cast<int>(r.sat.size()) >= need) break;
      if (static_cast<int>(r.sat.size() + domain.size() - i) < need) break;
    }
    int y = domain[i];
    bool pass = true;
    if (via != nullptr) {
      ++rel_tried;
      pass = EdgeHolds(*via, node, x, y);
      if (pass) ++rel_ok;
    }
    for (size_t j = 0; j < checks.size() && pass; ++j) {
      ++check_tried[j];
      pass = Property(y, checks[j]->name);
      if (pass) ++check_ok[j];
    }
    if (pass) {
      path.push_back(y);
      for (size_t ce : children) {
        const RelationEdge& e = graph_.edges[ce];
        if (!Eval(Other(e, node), node, y, &e, path).ok) {
          pass = false;
          break;
        }
      }
      path.pop_back();
    }
    if (pass) {
      r.sat.push_back(y);
    } else if (forall && !collect_) {
      break;
    }
  }
  r.ok = ApplyQuantifier(n.quantifier, static_cast<int>(r.sat.size()), r.domain, res.min_count);

  memo_[key] = r;
  if (!tracing_) return r;
  using PK = PatternInstance::Kind;
  trace_.push_back({Fragment(PK::kObjectExistence, node, ""), x,
                    std::to_string(r.sat.size()) + " of " + std::to_string(r.domain) +
                        (r.ok ? " satisfied" : " satisfied, failed")});
  for (size_t i = 0; i < restrictions.size(); ++i) {
    trace_.push_back({Fragment(PK::kPropertyExistence, node, restrictions[i]->name), x,
                      std::to_string(restriction_pass[i]) + " passed"});
  }
  if (via != nullptr) {
    trace_.push_back({Fragment(PK::kRelationExistence, via->from, via->relation), x,
                      std::to_string(rel_ok) + " of " + std::to_string(rel_tried) + " hold"});
  }
  for (size_t j = 0; j < checks.size(); ++j) {
    trace_.push_back({Fragment(PK::kPropertyExistence, node, checks[j]->name), x,
                      std::to_string(check_ok[j]) + " of " + std::to_string(check_tried[j]) +
                          " passed"});
  }
  return r;
}

void Evaluation::Collect(int node, int parent, int x, const RelationEdge* via,
                         std::vector<int>& path) {
  Result r = Eval(node, parent, x, via, path);
  for (int y : r.sat) {
    valid_[node].insert(y);
    path.push_back(y);
    for (size_t ce : graph_.ChildEdges(node, parent)) {
      const RelationEdge& e = graph_.edges[ce];
      Collect(Other(e, node), node, y, &e, path);
    }
    path.pop_back();
  }
}

std::string Evaluation::Fragment(PatternInstance::Kind k, int node, const std::string& element) const {
  for (const PatternInstance& p : fragments_) {
    if (p.kind == k && p.node == node && p.element == element) return ToString(p);
  }
  return std::string(Name(k));
}

std::optional<std::string> Evaluation::Limitation() const {
  for (const ObjectNode& n : graph_.nodes) {
    if (res_.at(n.id).kind == Kind::kUnknown) return "Unknown class: " + n.cls;
    for (const auto* list : {&n.restrictions, &n.checks}) {
      for (const PredicateProperty& p : *list) {
        if (!p.group) return "unknown property '" + p.name + "'";
      }
    }
  }
  for (const RelationEdge& e : graph_.edges) {
    if (!IsKnownRelation(e.relation)) return "unknown relation '" + e.relation + "'";
  }
  return std::nullopt;
}

std::optional<std::string> Evaluation::NoObjectNotice(int* node_out) {
  for (const ObjectNode& n : graph_.nodes) {
    if (!Candidates(n.id).empty()) continue;
    *node_out = n.id;
    if (res_.at(n.id).kind == Kind::kSubordinate) {
      return "Couldn't find any object of class: " + n.cls;
    }
    return "There is no " + Noun(n.id);
  }
  return std::nullopt;
}

std::string Evaluation::Description(int node, bool proper) const {
  const ObjectNode& n = *graph_.Find(node);
  std::vector<std::string> words;
  if (proper) words.push_back("proper");
  for (const auto& p : n.restrictions) words.push_back(p.name);
  if (!proper) {
    for (const auto& p : n.checks) words.push_back(p.name);
  }
  words.push_back(Plural(Noun(node)));
  std::string out = Join(words, " ");
  for (const RelationEdge& e : graph_.edges) {
    if (e.from == node) {
      out += " " + RelationPhrase(e.relation) + " " + Article(Noun(e.to)) + " " + Noun(e.to);
    } else if (e.to == node) {
      out += " that " + Article(Noun(e.from)) + " " + Noun(e.from) + " is " +
             RelationPhrase(e.relation);
    }
  }
  return out;
}

// Negative yes/no: what the first failed component got wrong.
void Evaluation::ExplainFailure(int root, Answer* answer) {
  const ObjectNode& n = *graph_.Find(root);
  const ClassResolution& res = res_.at(root);
  const Result& r = root_results_.at(root);
  bool forall = n.quantifier.kind == Quantifier::Kind::kForAll;

  // Classify every candidate outside the satisfied set by its first failure.
  std::map<std::string, std::vector<int>> by_property;  // checks and restrictions
  std::vector<std::string> property_order;
  std::map<size_t, std::vector<int>> by_edge;
  std::vector<size_t> children = graph_.ChildEdges(root, 0);
  for (int y : Candidates(root)) {
    if (Contains(r.sat, y)) continue;
    std::string failed;
    for (const auto* list : {&n.restrictions, &n.checks}) {
      for (const PredicateProperty* p : CheckOrder(*list)) {
        if (failed.empty() && !Property(y, p->name)) failed = p->name;
      }
    }
    if (!failed.empty()) {
      if (!by_property.count(failed)) property_order.push_back(failed);
      by_property[failed].push_back(y);
      continue;
    }
    std::vector<int> path = {y};
    for (size_t ce : children) {
      const RelationEdge& e = graph_.edges[ce];
      if (!Eval(Other(e, root), root, y, &e, path).ok) {
        by_edge[ce].push_back(y);
        break;
      }
    }
  }

  std::string summary =
      n.quantifier.kind == Quantifier::Kind::kExists ? "There are no " : "There are not enough ";
  summary += Description(root, forall);

  // "a brown dog", "5 red birds": the actual value of the failed group.
  std::vector<std::string> causes;
  std::set<std::string> failed_classes;
  for (const std::string& p : property_order) {
    std::map<std::pair<std::string, std::string>, int> groups;
    std::vector<std::pair<std::string, std::string>> order;
    auto group = GroupOf(p);
    auto f = group ? FunctionOf(*group) : std::nullopt;
    for (int y : by_property[p]) {
      const SceneObject& o = Obj(y);
      std::string value;
      if (f) {
        try {
          value = GetFunctionProperty(o, *f, scene_);
        } catch (const NotApplicable&) {
        }
      }
      auto key = std::make_pair(value, o.cls);
      if (!groups.count(key)) order.push_back(key);
      ++groups[key];
      failed_classes.insert(o.cls);
    }
    for (const auto& key : order) {
      std::string noun = key.first.empty() ? key.second : key.first + " " + key.second;
      int count = groups[key];
      causes.push_back(count == 1 ? Article(noun) + " " + noun
                                  : std::to_string(count) + " " +
                                        (key.first.empty() ? "" : key.first + " ") +
                                        Plural(key.second));
    }
    answer->diagnostics.push_back({FailureRecord::Kind::kProperty, p, by_property[p],
                                   "fails on " + std::to_string(by_property[p].size()) + " of " +
                                       std::to_string(Candidates(root).size()) + " candidates"});
  }
  if (!causes.empty()) summary += " (failed due to " + JoinAnd(causes) + ")";
  if (res.kind == Kind::kSuperordinate || res.kind == Kind::kSynonym) {
    std::vector<std::string> notes;
    for (const std::string& c : failed_classes) {
      if (c == res.name) continue;
      notes.push_back(c + (res.kind == Kind::kSynonym ? " is a synonym of " : " is a subclass of ") +
                      res.name);
    }
    if (!notes.empty()) summary += ", where " + JoinAnd(notes);
  }
  answer->summary = summary;
  answer->diagnostics.push_back(
      {FailureRecord::Kind::kQuantifier, ToString(n.quantifier), r.sat,
       std::to_string(r.sat.size()) + " of " + std::to_string(r.domain) + " satisfied, " +
           std::to_string(forall ? std::max(r.domain, Need(n.quantifier, res.min_count))
                                 : Need(n.quantifier, res.min_count)) +
           " required"});

  for (const auto& [ce, objs] : by_edge) {
    const RelationEdge& e = graph_.edges[ce];
    answer->diagnostics.push_back({FailureRecord::Kind::kRelation, e.relation, objs,
                                   "fails on " + std::to_string(objs.size()) + " of " +
                                       std::to_string(Candidates(root).size()) + " candidates"});
  }
  if (!opt_.alternatives) return;

  // Actual values of the failed property groups.
  for (const std::string& p : property_order) {
    auto group = GroupOf(p);
    auto f = group ? FunctionOf(*group) : std::nullopt;
    if (!f) continue;
    std::vector<std::string> values;
    for (int y : Candidates(root)) {
      try {
        std::string v = GetFunctionProperty(Obj(y), *f, scene_);
        if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
      } catch (const NotApplicable&) {
      }
    }
    if (!values.empty()) {
      answer->alternatives.push_back("The " + std::string(Name(*f)) + " of the " +
                                     Plural(Noun(root)) + ": " + Join(values, ", "));
    }
  }

  // Other relations holding between the two candidate sets.
  if (!by_edge.empty()) {
    const RelationEdge& e = graph_.edges[by_edge.begin()->first];
    auto passes = [&](int node, int y) {
      const ObjectNode& m = *graph_.Find(node);
      for (const auto* list : {&m.restrictions, &m.checks}) {
        for (const auto& p : *list) {
          if (!Property(y, p.name)) return false;
        }
      }
      return true;
    };
    std::vector<int> froms, tos;
    for (int y : Candidates(e.from)) {
      if (passes(e.from, y)) froms.push_back(y);
    }
    for (int y : Candidates(e.to)) {
      if (passes(e.to, y)) tos.push_back(y);
    }
    auto failed_info = FindRelation(e.relation);
    std::vector<std::pair<const RelationInfo*, int>> same_family, others;
    for (const RelationInfo& info : RegisteredRelations()) {
      if (info.name == e.relation || info.kind == RelationKind::kPart) continue;
      int count = 0;
      for (int a : froms) {
        for (int b : tos) {
          if (a != b && CheckRelation(info.name, Obj(a), Obj(b), scene_)) ++count;
        }
      }
      if (count == 0) continue;
      bool same = failed_info && failed_info->family == info.family;
      (same ? same_family : others).emplace_back(&info, count);
    }
    const auto& chosen = same_family.empty() ? others : same_family;
    std::vector<std::string> parts;
    for (const auto& [info, count] : chosen) {
      std::string phrase = "'" + Noun(e.from) + " " + info->phrase + " " + Article(Noun(e.to)) +
                           " " + Noun(e.to) + "'";
      parts.push_back(count == 1 ? phrase : std::to_string(count) + " " + phrase);
    }
    if (!parts.empty()) {
      answer->alternatives.push_back("Existing alternative relations: " + Join(parts, ", "));
    }
  }
}

void Evaluation::ClassAlternatives(int node, Answer* answer) {
  const ClassResolution& res = res_.at(node);
  if (res.kind == Kind::kSubordinate) {
    std::map<std::string, int> types;
    for (const Detection& d : Detections("person")) ++types[PersonType(Obj(d.object_id))];
    if (types.empty()) return;
    std::vector<std::pair<std::string, int>> sorted(types.begin(), types.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> parts;
    for (const auto& [type, count] : sorted) parts.push_back(Counted(count, type));
    answer->alternatives.push_back("failed subclasses: " + JoinAnd(parts));

    // Retry with the superordinate class.
    QuestionGraph retry = graph_;
    retry.Find(node)->cls = "person";
    Engine quiet = engine_;
    quiet.options().alternatives = false;
    quiet.options().elaborations = false;
    Answer again = quiet.Evaluate(retry, scene_);
    std::string text = again.summary.empty() ? again.value : again.summary;
    if (text.rfind("Yes, t", 0) == 0) text = "T" + text.substr(6);
    answer->alternatives.push_back(text + " (superordinate class)");
    return;
  }
  std::map<std::string, int> counts;
  for (const std::string& cls : engine_.profile().known_classes) {
    int c = static_cast<int>(Detections(cls).size());
    if (c > 0) counts[cls] = c;
  }
  std::vector<std::pair<std::string, int>> sorted(counts.begin(), counts.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (size_t i = 0; i < sorted.size() && i < 3; ++i) {
    const auto& [cls, count] = sorted[i];
    answer->alternatives.push_back(count == 1 ? "There is " + Counted(1, cls)
                                              : "There are " + Counted(count, cls));
  }
}

std::string Evaluation::Value(std::string* summary, Answer* answer) {
  const QueryTarget& t = graph_.target;
  std::vector<const SceneObject*> objects;
  for (int id : valid_[t.variable]) objects.push_back(&Obj(id));
  switch (t.kind) {
    case QueryTarget::Kind::kExistence:
      return "";
    case QueryTarget::Kind::kClass: {
      std::vector<std::string> names;
      for (const SceneObject* o : objects) {
        if (std::find(names.begin(), names.end(), o->cls) == names.end()) names.push_back(o->cls);
      }
      std::string v = names.empty() ? "nothing" : Join(names, ", ");
      *summary = "It is " + (names.size() == 1 ? Article(v) + " " + v : v);
      return v;
    }
    case QueryTarget::Kind::kPropertyValue: {
      auto f = *ParsePropertyFunction(t.function);
      std::vector<std::string> values;
      std::vector<std::pair<const SceneObject*, std::string>> each;
      std::string not_applicable;
      for (const SceneObject* o : objects) {
        try {
          std::string v = GetFunctionProperty(*o, f, scene_);
          each.emplace_back(o, v);
          if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        } catch (const NotApplicable& e) {
          if (not_applicable.empty()) not_applicable = e.what();
        }
      }
      if (objects.empty()) return "nothing";
      if (values.empty()) return not_applicable;
      std::string v = Join(values, ", ");
      *summary = "The " + t.function + " of the " + Noun(t.variable) + ": " + v;
      if (opt_.elaborations && values.size() > 1) {
        for (const auto& [o, value] : each) {
          answer->elaborations.push_back("The " + t.function + " of the " + o->cls + ": " + value);
        }
      }
      return v;
    }
    case QueryTarget::Kind::kSetValue: {
      auto g = *ParseSetFunction(t.function);
      SetResult r = ComputeSetProperty(g, objects, scene_);
      std::string v = r.ToString();
      if (g == SetFunction::kQuantity) {
        *summary = "The number of the " + Plural(Noun(t.variable)) + ": " + v;
        if (opt_.elaborations && r.subgroups.size() > 1) {
          std::vector<std::string> parts;
          for (const auto& [cls, count] : r.subgroups) {
            parts.push_back(cls + ": " + std::to_string(count));
          }
          answer->elaborations.push_back("number per sub group: " + Join(parts, ", "));
        }
      }
      return v;
    }
  }
  return "";
}

void Evaluation::Elaborate(Answer* answer) {
  for (const ObjectNode& n : graph_.nodes) {
    const ClassResolution& res = res_.at(n.id);
    std::vector<std::string> present;
    for (int y : Candidates(n.id)) {
      const std::string& c = Obj(y).cls;
      if (std::find(present.begin(), present.end(), c) == present.end()) present.push_back(c);
    }
    switch (res.kind) {
      case Kind::kSynonym:
        answer->elaborations.push_back(res.members.front() +
                                       (res.link == "similar" ? " is similar to " : " is a synonym of ") +
                                       res.name);
        break;
      case Kind::kSuperordinate:
        for (const std::string& c : present) {
          answer->elaborations.push_back(c + " is a subclass of " + res.name);
        }
        break;
      case Kind::kGroup: {
        if (root_results_.count(n.id)) {
          int count = static_cast<int>(root_results_[n.id].sat.size());
          std::string member = present.empty() ? res.members.front() : present.front();
          if (count > 0) {
            answer->elaborations.push_back("there are " + Counted(count, member) + " (at least " +
                                           std::to_string(res.min_count) + " " + Plural(member) +
                                           ")");
          }
        }
        for (const std::string& c : present) {
          answer->elaborations.push_back(c + " is a part of " + Article(res.name) + " " + res.name);
        }
        break;
      }
      default:
        break;
    }
  }
  for (const Hint& h : hints_) {
    answer->elaborations.push_back("'" + h.cls + "' was detected according to \"hint\" relation: '" +
                                   h.description + "'");
  }
}

Answer Evaluation::Run() {
  Answer answer;
  const DetectorProfile& profile = engine_.profile();
  for (const ObjectNode& n : graph_.nodes) {
    res_[n.id] = ResolveClass(n.cls, engine_.kb(), profile.known_classes);
  }
  if (auto notice = Limitation()) {
    answer.value = answer.summary = *notice;
    return answer;
  }
  if (opt_.plan_traversal) {
    std::map<std::string, int> counts;
    for (const ObjectNode& n : graph_.nodes) counts[n.cls] = static_cast<int>(Candidates(n.id).size());
    graph_ = PlanTraversal(graph_, counts);
  }
  collect_ = graph_.target.kind != QueryTarget::Kind::kExistence;
  fragments_ = ExtractFragments(graph_);

  bool all_ok = true;
  int failed_root = 0;
  for (int root : graph_.Roots()) {
    GuideRoot(root);
    std::vector<int> path;
    Result r = Eval(root, 0, 0, nullptr, path);
    root_results_[root] = r;
    if (!r.ok) {
      all_ok = false;
      failed_root = root;
      if (!collect_) break;
    }
  }
  if (all_ok && !collect_) {
    // Full counts for the summary and elaborations; the early exit above
    // stops at the first sufficient set.
    collect_ = true;
    tracing_ = false;
    memo_.clear();
    for (int root : graph_.Roots()) {
      std::vector<int> path;
      root_results_[root] = Eval(root, 0, 0, nullptr, path);
    }
  } else if (all_ok) {
    for (int root : graph_.Roots()) {
      std::vector<int> path;
      Collect(root, 0, 0, nullptr, path);
    }
  }
  answer.trace = trace_;

  int missing = 0;
  if (auto notice = NoObjectNotice(&missing)) {
    answer.value = answer.summary = *notice;
    answer.diagnostics.push_back(
        {FailureRecord::Kind::kClass, graph_.Find(missing)->cls, {}, "no candidates detected"});
    if (opt_.alternatives) ClassAlternatives(missing, &answer);
    return answer;
  }

  std::string summary;
  if (graph_.target.kind == QueryTarget::Kind::kExistence) {
    if (all_ok) {
      answer.value = "yes";
      int root = graph_.Roots().front();
      const Result& r = root_results_[root];
      const SceneObject& first = Obj(r.sat.front());
      std::string text = r.sat.size() == 1 ? "there is " + Counted(1, first.cls)
                                           : "there are " + Counted(static_cast<int>(r.sat.size()),
                                                                    first.cls);
      for (size_t ce : graph_.ChildEdges(root, 0)) {
        const RelationEdge& e = graph_.edges[ce];
        if (e.from != root) continue;
        text += " " + RelationPhrase(e.relation) + " " + Article(Noun(e.to)) + " " + Noun(e.to);
      }
      answer.summary = "Yes, " + text;
    } else {
      answer.value = "no";
      ExplainFailure(failed_root, &answer);
    }
  } else {
    answer.value = Value(&summary, &answer);
    answer.summary = summary.empty() ? answer.value : summary;
    const QueryTarget& t = graph_.target;
    if (t.kind != QueryTarget::Kind::kClass) {
      auto kind = t.kind == QueryTarget::Kind::kSetValue ? PatternInstance::Kind::kSetProperty
                                                          : PatternInstance::Kind::kFunctionProperty;
      answer.trace.push_back({Fragment(kind, t.variable, t.function), 0, answer.value});
    }
  }
  if (opt_.elaborations) {
    std::vector<std::string> own = std::move(answer.elaborations);
    answer.elaborations.clear();
    Elaborate(&answer);
    answer.elaborations.insert(answer.elaborations.end(), own.begin(), own.end());
  }
  return answer;
}

}  // namespace

bool ApplyQuantifier(const Quantifier& q, int satisfied, int candidates, int min_count) {
  int need = Need(q, min_count);
  if (q.kind == Quantifier::Kind::kForAll) return candidates >= need && satisfied == candidates;
  return satisfied >= need;
}

Engine::Engine(KnowledgeBase kb, RelationPriors priors, DetectorProfile profile,
               EngineOptions options, const Lexicon& lexicon)
    : kb_(std::move(kb)),
      priors_(std::move(priors)),
      profile_(std::move(profile)),
      options_(options),
      lexicon_(&lexicon) {}

Answer Engine::Ask(std::string_view question, const Scene& scene) const {
  return Evaluate(GraphFromQuestion(question, *lexicon_), scene);
}

Answer Engine::Evaluate(const QuestionGraph& graph, const Scene& scene) const {
  return Evaluation(*this, graph, scene).Run();
}

QuestionGraph Engine::Plan(const QuestionGraph& graph, const Scene& scene) const {
  if (!options_.plan_traversal) return graph;
  std::map<std::string, int> counts;
  for (const ObjectNode& n : graph.nodes) {
    ClassResolution r = ResolveClass(n.cls, kb_, profile_.known_classes);
    int c = 0;
    for (const std::string& m : r.members) {
      c += static_cast<int>(Detect(scene, {m}, std::nullopt, profile_).size());
    }
    counts[n.cls] = c;
  }
  return PlanTraversal(graph, counts);
}

}  // namespace cqa
