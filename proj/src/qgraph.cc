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

#include "cqa/qgraph.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cqa/errors.h"
#include "cqa/text.h"

namespace cqa {
namespace {

// Disjoint sets over node positions.
class Components {
 public:
  explicit Components(size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  size_t Find(size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<size_t> parent_;
};

size_t IndexOf(const QuestionGraph& g, int id) {
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.nodes[i].id == id) return i;
  }
  throw GraphError("undeclared variable #" + std::to_string(id));
}

std::string List(const std::vector<PredicateProperty>& props) {
  std::vector<std::string> names;
  for (const auto& p : props) names.push_back(p.name);
  return "[" + Join(names, ",") + "]";
}

std::string List(const std::vector<std::string>& names) { return "[" + Join(names, ",") + "]"; }

std::vector<std::string> ParseList(std::string_view s, const std::string& key, int line) {
  if (s.size() < key.size() + 2 || s.substr(0, key.size()) != key || s[key.size()] != '[' ||
      s.back() != ']') {
    throw FormatError("<graph>", line, "expected " + key + "[...]");
  }
  std::string_view body = s.substr(key.size() + 1, s.size() - key.size() - 2);
  std::vector<std::string> out;
  if (body.empty()) return out;
  for (std::string_view item : Split(body, ',')) out.emplace_back(item);
  return out;
}

void CheckTrees(const QuestionGraph& g) {
  Components comps(g.nodes.size());
  for (const RelationEdge& e : g.edges) {
    if (e.from == e.to) throw GraphError("relation " + e.relation + " links a node to itself");
    if (!comps.Union(IndexOf(g, e.from), IndexOf(g, e.to))) {
      throw GraphError("relations form a cycle at " + e.relation + "(#" +
                       std::to_string(e.from) + ", #" + std::to_string(e.to) + ")");
    }
  }
}

void CheckTarget(QuestionGraph& g) {
  if (g.target.kind == QueryTarget::Kind::kExistence) return;
  ObjectNode* node = g.Find(g.target.variable);
  if (node == nullptr) {
    throw GraphError("query target #" + std::to_string(g.target.variable) + " is undeclared");
  }
  if (g.target.kind == QueryTarget::Kind::kPropertyValue &&
      !ParsePropertyFunction(g.target.function)) {
    throw GraphError("unknown property function '" + g.target.function + "'");
  }
  if (g.target.kind == QueryTarget::Kind::kSetValue && !ParseSetFunction(g.target.function)) {
    throw GraphError("unknown set function '" + g.target.function + "'");
  }
}

}  // namespace

std::string ToString(const Quantifier& q) {
  switch (q.kind) {
    case Quantifier::Kind::kExists: return "exists";
    case Quantifier::Kind::kForAll: return "all";
    case Quantifier::Kind::kAtLeast: return "atleast:" + std::to_string(q.n);
  }
  return "";
}

std::optional<Quantifier> ParseQuantifier(std::string_view s) {
  if (s == "exists") return Quantifier::Exists();
  if (s == "all") return Quantifier::ForAll();
  if (s.substr(0, 8) == "atleast:") {
    std::string digits(s.substr(8));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      return std::nullopt;
    }
    int n = std::stoi(digits);
    if (n >= 1) return Quantifier::AtLeast(n);
  }
  return std::nullopt;
}

PredicateProperty PredicateProperty::Of(std::string name) {
  auto group = GroupOf(name);
  return {std::move(name), group};
}

const ObjectNode* QuestionGraph::Find(int id) const {
  for (const ObjectNode& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

ObjectNode* QuestionGraph::Find(int id) {
  for (ObjectNode& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<int> QuestionGraph::Roots() const {
  Components comps(nodes.size());
  for (const RelationEdge& e : edges) comps.Union(IndexOf(*this, e.from), IndexOf(*this, e.to));
  std::vector<int> roots;
  std::vector<bool> seen(nodes.size(), false);
  for (size_t i = 0; i < nodes.size(); ++i) {
    size_t c = comps.Find(i);
    if (seen[c]) continue;
    int root = nodes[i].id;
    for (size_t j = i; j < nodes.size(); ++j) {
      if (comps.Find(j) != c) continue;
      bool incoming = std::any_of(edges.begin(), edges.end(),
                                  [&](const RelationEdge& e) { return e.to == nodes[j].id; });
      if (!incoming) {
        root = nodes[j].id;
        break;
      }
    }
    seen[c] = true;
    roots.push_back(root);
  }
  return roots;
}

std::vector<size_t> QuestionGraph::ChildEdges(int node, int parent) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < edges.size(); ++i) {
    const RelationEdge& e = edges[i];
    if ((e.from == node && e.to != parent) || (e.to == node && e.from != parent)) out.push_back(i);
  }
  return out;
}

QuestionGraph BuildGraph(const std::vector<TernaryExpression>& ternaries,
                         const QueryTarget& target) {
  QuestionGraph g;
  g.target = target;
  for (const TernaryExpression& t : ternaries) {
    if (t.kind != TernaryKind::kBe) continue;
    if (t.subject.var <= 0) throw GraphError("'be' needs a variable subject");
    if (g.Find(t.subject.var)) {
      throw GraphError("variable #" + std::to_string(t.subject.var) + " declared twice");
    }
    ObjectNode node;
    node.id = t.subject.var;
    node.cls = t.subject.name;
    node.class_queried = t.query;
    g.nodes.push_back(std::move(node));
  }
  int queries = 0;
  std::vector<bool> quantified(g.nodes.size(), false);
  for (const TernaryExpression& t : ternaries) {
    if (t.query) ++queries;
    if (t.kind == TernaryKind::kBe) continue;
    ObjectNode* node = g.Find(t.subject.var);
    if (node == nullptr) {
      throw GraphError("undeclared variable #" + std::to_string(t.subject.var) + " in " +
                       ToString(t));
    }
    switch (t.kind) {
      case TernaryKind::kHasProperty:
        node->checks.push_back(PredicateProperty::Of(t.object.name));
        break;
      case TernaryKind::kHasRestriction:
        node->restrictions.push_back(PredicateProperty::Of(t.object.name));
        break;
      case TernaryKind::kHasQuantifier: {
        size_t idx = IndexOf(g, node->id);
        if (quantified[idx]) throw GraphError("two quantifiers on #" + std::to_string(node->id));
        quantified[idx] = true;
        auto q = t.object.name == "all" ? std::optional(Quantifier::ForAll())
                                           : ParseQuantifier("atleast:" + t.object.name);
        if (!q) throw GraphError("bad quantifier '" + t.object.name + "'");
        node->quantifier = *q;
        break;
      }
      case TernaryKind::kPropertyQuery:
        if (!ParsePropertyFunction(t.arg)) throw GraphError("unknown property function " + t.arg);
        node->property_queries.push_back(t.arg);
        break;
      case TernaryKind::kSetQuery:
        if (!ParseSetFunction(t.arg)) throw GraphError("unknown set function " + t.arg);
        node->set_queries.push_back(t.arg);
        break;
      case TernaryKind::kRelation:
        if (!g.Find(t.object.var)) {
          throw GraphError("undeclared variable #" + std::to_string(t.object.var) + " in " +
                           ToString(t));
        }
        g.edges.push_back({t.arg, t.subject.var, t.object.var, Traversal::kAsStated});
        break;
      case TernaryKind::kBe:
        break;
    }
  }
  if (queries > 1) throw GraphError("more than one query marker");
  // Canonical edge order: by source then target variable.
  std::stable_sort(g.edges.begin(), g.edges.end(), [](const RelationEdge& a, const RelationEdge& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  CheckTrees(g);
  CheckTarget(g);
  return g;
}

QuestionGraph GraphFromQuestion(std::string_view question, const Lexicon& lexicon) {
  ParsedQuestion parsed = ParseQuestion(question, lexicon);
  return BuildGraph(parsed.ternaries, parsed.target);
}

std::string Serialize(const QuestionGraph& g) {
  std::ostringstream out;
  for (const ObjectNode& n : g.nodes) {
    out << "node " << n.id << " c=" << (n.cls.empty() ? "*" : n.cls) << " p=" << List(n.checks)
        << " pr=" << List(n.restrictions) << " f=" << List(n.property_queries)
        << " g=" << List(n.set_queries) << " q=" << ToString(n.quantifier) << "\n";
  }
  for (const RelationEdge& e : g.edges) {
    out << "edge " << e.relation << " " << e.from << " " << e.to << " "
        << (e.traversal == Traversal::kAsStated ? "as-stated" : "reversed") << "\n";
  }
  out << "target ";
  switch (g.target.kind) {
    case QueryTarget::Kind::kExistence: out << "existence"; break;
    case QueryTarget::Kind::kClass: out << "class " << g.target.variable; break;
    case QueryTarget::Kind::kPropertyValue:
      out << "property:" << g.target.function << " " << g.target.variable;
      break;
    case QueryTarget::Kind::kSetValue:
      out << "set:" << g.target.function << " " << g.target.variable;
      break;
  }
  out << "\n";
  return out.str();
}

QuestionGraph DeserializeGraph(std::string_view text) {
  QuestionGraph g;
  bool have_target = false;
  int line_no = 0;
  auto to_int = [&](std::string_view s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw FormatError("<graph>", line_no, "expected a number, got '" + std::string(s) + "'");
    }
    return std::stoi(std::string(s));
  };
  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> f = Split(line, ' ');
    if (f[0] == "node") {
      if (f.size() != 8) throw FormatError("<graph>", line_no, "node line needs 8 fields");
      ObjectNode n;
      n.id = to_int(f[1]);
      if (f[2].substr(0, 2) != "c=") throw FormatError("<graph>", line_no, "expected c=");
      n.cls = std::string(f[2].substr(2));
      if (n.cls == "*") n.cls.clear();
      for (auto& p : ParseList(f[3], "p=", line_no)) n.checks.push_back(PredicateProperty::Of(p));
      for (auto& p : ParseList(f[4], "pr=", line_no)) {
        n.restrictions.push_back(PredicateProperty::Of(p));
      }
      n.property_queries = ParseList(f[5], "f=", line_no);
      n.set_queries = ParseList(f[6], "g=", line_no);
      if (f[7].substr(0, 2) != "q=") throw FormatError("<graph>", line_no, "expected q=");
      auto q = ParseQuantifier(f[7].substr(2));
      if (!q) throw FormatError("<graph>", line_no, "bad quantifier");
      n.quantifier = *q;
      if (g.Find(n.id)) throw FormatError("<graph>", line_no, "duplicate node id");
      g.nodes.push_back(std::move(n));
    } else if (f[0] == "edge") {
      if (f.size() != 5) throw FormatError("<graph>", line_no, "edge line needs 5 fields");
      RelationEdge e{std::string(f[1]), to_int(f[2]), to_int(f[3]), Traversal::kAsStated};
      if (f[4] == "reversed") {
        e.traversal = Traversal::kReversed;
      } else if (f[4] != "as-stated") {
        throw FormatError("<graph>", line_no, "traversal must be as-stated or reversed");
      }
      g.edges.push_back(std::move(e));
    } else if (f[0] == "target") {
      if (f.size() < 2) throw FormatError("<graph>", line_no, "target needs a kind");
      std::string_view kind = f[1];
      if (kind == "existence" && f.size() == 2) {
        g.target = {};
      } else if (f.size() == 3 && kind == "class") {
        g.target = {QueryTarget::Kind::kClass, "", to_int(f[2])};
      } else if (f.size() == 3 && kind.substr(0, 9) == "property:") {
        g.target = {QueryTarget::Kind::kPropertyValue, std::string(kind.substr(9)), to_int(f[2])};
      } else if (f.size() == 3 && kind.substr(0, 4) == "set:") {
        g.target = {QueryTarget::Kind::kSetValue, std::string(kind.substr(4)), to_int(f[2])};
      } else {
        throw FormatError("<graph>", line_no, "bad target line");
      }
      have_target = true;
    } else {
      throw FormatError("<graph>", line_no, "unknown line kind '" + std::string(f[0]) + "'");
    }
  }
  if (!have_target) throw FormatError("<graph>", 0, "missing target line");
  for (const RelationEdge& e : g.edges) {
    if (!g.Find(e.from) || !g.Find(e.to)) throw GraphError("edge references an unknown node");
  }
  if (g.target.kind == QueryTarget::Kind::kClass) {
    if (ObjectNode* n = g.Find(g.target.variable)) n->class_queried = true;
  }
  CheckTrees(g);
  CheckTarget(g);
  return g;
}

std::string_view Name(PatternInstance::Kind k) {
  switch (k) {
    case PatternInstance::Kind::kObjectExistence: return "ObjectExistence";
    case PatternInstance::Kind::kPropertyExistence: return "PropertyExistence";
    case PatternInstance::Kind::kFunctionProperty: return "FunctionProperty";
    case PatternInstance::Kind::kSetProperty: return "SetProperty";
    case PatternInstance::Kind::kRelationExistence: return "RelationExistence";
  }
  return "";
}

std::string ToString(const PatternInstance& p) {
  std::string cls = p.cls.empty() ? "*" : p.cls;
  std::string s = std::string(Name(p.kind)) + "(" + cls;
  switch (p.kind) {
    case PatternInstance::Kind::kObjectExistence:
      s += ", q=" + ToString(p.quantifier);
      break;
    case PatternInstance::Kind::kRelationExistence:
      s += ", " + p.element + ", " + (p.other_cls.empty() ? "*" : p.other_cls);
      break;
    default:
      s += ", " + p.element;
  }
  s += ")";
  if (p.query) s = "?-" + s;
  return s;
}

std::vector<PatternInstance> ExtractFragments(const QuestionGraph& g) {
  using K = PatternInstance::Kind;
  std::vector<PatternInstance> out;
  auto is_target = [&](const ObjectNode& n, QueryTarget::Kind kind, const std::string& fn) {
    return g.target.kind == kind && g.target.variable == n.id && g.target.function == fn;
  };
  for (const ObjectNode& n : g.nodes) {
    PatternInstance base;
    base.node = n.id;
    base.cls = n.cls;
    base.quantifier = n.quantifier;

    PatternInstance p = base;
    p.kind = K::kObjectExistence;
    p.query = n.class_queried;
    out.push_back(p);
    for (const auto& r : n.restrictions) {
      p = base;
      p.kind = K::kPropertyExistence;
      p.element = r.name;
      p.restriction = true;
      out.push_back(p);
    }
    for (const auto& c : n.checks) {
      p = base;
      p.kind = K::kPropertyExistence;
      p.element = c.name;
      out.push_back(p);
    }
    for (const auto& f : n.property_queries) {
      p = base;
      p.kind = K::kFunctionProperty;
      p.element = f;
      p.query = is_target(n, QueryTarget::Kind::kPropertyValue, f);
      out.push_back(p);
    }
    for (const auto& s : n.set_queries) {
      p = base;
      p.kind = K::kSetProperty;
      p.element = s;
      p.query = is_target(n, QueryTarget::Kind::kSetValue, s);
      out.push_back(p);
    }
  }
  for (const RelationEdge& e : g.edges) {
    PatternInstance p;
    p.kind = K::kRelationExistence;
    p.node = e.from;
    p.other = e.to;
    p.cls = g.Find(e.from)->cls;
    p.other_cls = g.Find(e.to)->cls;
    p.element = e.relation;
    p.quantifier = g.Find(e.from)->quantifier;
    p.traversal = e.traversal;
    out.push_back(p);
  }
  return out;
}

QuestionGraph PlanTraversal(const QuestionGraph& g, const std::map<std::string, int>& detections) {
  QuestionGraph out = g;
  auto detected = [&](int id) {
    auto it = detections.find(g.Find(id)->cls);
    return it != detections.end() && it->second > 0;
  };
  for (RelationEdge& e : out.edges) {
    bool from = detected(e.from);
    bool to = detected(e.to);
    e.traversal = (!from && to) ? Traversal::kReversed : Traversal::kAsStated;
  }
  return out;
}

}  // namespace cqa
