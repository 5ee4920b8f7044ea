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

#include "cqa/knowledge.h"

#include <algorithm>
#include <tuple>

#include "cqa/errors.h"
#include "cqa/text.h"
#include "cqa/world.h"
#include "json.hpp"

namespace cqa {
namespace {

constexpr std::pair<KbRelation, std::string_view> kRelationNames[] = {
    {KbRelation::kIsA, "IsA"},         {KbRelation::kInstanceOf, "InstanceOf"},
    {KbRelation::kMadeOf, "MadeOf"},   {KbRelation::kPartOf, "PartOf"},
    {KbRelation::kSynonym, "Synonym"}, {KbRelation::kSimilarTo, "SimilarTo"},
    {KbRelation::kMemberOf, "MemberOf"},
};

// Known classes linked to name by rel in either direction, heaviest first.
std::vector<std::pair<std::string, double>> Linked(const KnowledgeBase& kb, std::string_view name,
                                                   KbRelation rel, bool heads_only,
                                                   const std::set<std::string>& known) {
  std::map<std::string, double> best;
  for (const auto& t : kb.Query(std::nullopt, rel, name)) {
    if (t.weight >= kb.weight_floor && known.count(t.head)) {
      best[t.head] = std::max(best[t.head], t.weight);
    }
  }
  if (!heads_only) {
    for (const auto& t : kb.Query(name, rel, std::nullopt)) {
      if (t.weight >= kb.weight_floor && known.count(t.tail)) {
        best[t.tail] = std::max(best[t.tail], t.weight);
      }
    }
  }
  std::vector<std::pair<std::string, double>> out(best.begin(), best.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

}  // namespace

std::string_view Name(KbRelation r) {
  for (const auto& [rel, name] : kRelationNames) {
    if (rel == r) return name;
  }
  return "";
}

std::optional<KbRelation> ParseKbRelation(std::string_view name) {
  for (const auto& [rel, n] : kRelationNames) {
    if (n == name) return rel;
  }
  return std::nullopt;
}

KnowledgeBase KnowledgeBase::Parse(std::string_view text, const std::string& source) {
  KnowledgeBase kb;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    auto f = Split(line, '\t');
    if (f.size() != 4) throw FormatError(source, line_no, "expected head<TAB>relation<TAB>tail<TAB>weight");
    auto rel = ParseKbRelation(Trim(f[1]));
    if (!rel) throw FormatError(source, line_no, "unknown relation '" + std::string(f[1]) + "'");
    double weight = 0;
    try {
      size_t used = 0;
      std::string w(Trim(f[3]));
      weight = std::stod(w, &used);
      if (used != w.size()) throw std::invalid_argument(w);
    } catch (const std::exception&) {
      throw FormatError(source, line_no, "bad weight '" + std::string(f[3]) + "'");
    }
    if (!(weight > 0)) throw FormatError(source, line_no, "weight must be positive");
    std::string head = ToLower(Trim(f[0]));
    std::string tail = ToLower(Trim(f[2]));
    if (head.empty() || tail.empty()) throw FormatError(source, line_no, "empty concept");
    kb.Add({head, *rel, tail, weight});
  }
  return kb;
}

KnowledgeBase KnowledgeBase::Load(const std::string& path) { return Parse(ReadFile(path), path); }

void KnowledgeBase::Add(const KnowledgeTriple& t) {
  auto key = std::make_tuple(t.head, t.relation, t.tail);
  if (auto it = index_.find(key); it != index_.end()) {
    triples_[it->second].weight += t.weight;
    return;
  }
  size_t i = triples_.size();
  triples_.push_back(t);
  index_.emplace(key, i);
  by_head_.emplace(t.head, i);
  by_tail_.emplace(t.tail, i);
}

std::vector<KnowledgeTriple> KnowledgeBase::Query(std::optional<std::string_view> head,
                                                  std::optional<KbRelation> relation,
                                                  std::optional<std::string_view> tail) const {
  std::vector<size_t> hits;
  auto matches = [&](const KnowledgeTriple& t) {
    return (!head || t.head == *head) && (!relation || t.relation == *relation) &&
           (!tail || t.tail == *tail);
  };
  if (head) {
    auto [lo, hi] = by_head_.equal_range(std::string(*head));
    for (auto it = lo; it != hi; ++it) hits.push_back(it->second);
  } else if (tail) {
    auto [lo, hi] = by_tail_.equal_range(std::string(*tail));
    for (auto it = lo; it != hi; ++it) hits.push_back(it->second);
  } else {
    for (size_t i = 0; i < triples_.size(); ++i) hits.push_back(i);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<KnowledgeTriple> out;
  for (size_t i : hits) {
    if (matches(triples_[i])) out.push_back(triples_[i]);
  }
  return out;
}

std::string_view Name(ClassResolution::Kind k) {
  switch (k) {
    case ClassResolution::Kind::kAny: return "any";
    case ClassResolution::Kind::kBasic: return "basic";
    case ClassResolution::Kind::kSubordinate: return "subordinate";
    case ClassResolution::Kind::kSynonym: return "synonym";
    case ClassResolution::Kind::kSuperordinate: return "superordinate";
    case ClassResolution::Kind::kGroup: return "group";
    case ClassResolution::Kind::kSubObject: return "sub-object";
    case ClassResolution::Kind::kUnknown: return "unknown";
  }
  return "";
}

ClassResolution ResolveClass(std::string_view name, const KnowledgeBase& kb,
                             const std::set<std::string>& known) {
  using K = ClassResolution::Kind;
  ClassResolution r;
  r.name = std::string(name);
  if (name.empty()) {
    r.kind = K::kAny;
    r.members.assign(known.begin(), known.end());
    return r;
  }
  if (known.count(r.name)) {
    r.kind = K::kBasic;
    r.members = {r.name};
    return r;
  }
  // Person subclasses, built in or reached through a synonym.
  const auto& subs = PersonSubclasses();
  std::string sub;
  if (std::find(subs.begin(), subs.end(), name) != subs.end()) {
    sub = r.name;
  } else {
    std::set<std::string> sub_set(subs.begin(), subs.end());
    auto linked = Linked(kb, name, KbRelation::kSynonym, false, sub_set);
    if (!linked.empty()) sub = linked.front().first;
  }
  if (!sub.empty() && known.count("person")) {
    r.kind = K::kSubordinate;
    r.members = {"person"};
    r.link = sub;
    return r;
  }
  for (KbRelation rel : {KbRelation::kSynonym, KbRelation::kSimilarTo}) {
    auto linked = Linked(kb, name, rel, false, known);
    if (!linked.empty()) {
      r.kind = K::kSynonym;
      r.members = {linked.front().first};
      r.link = rel == KbRelation::kSynonym ? "synonym" : "similar";
      return r;
    }
  }
  std::map<std::string, double> heads;
  for (KbRelation rel : {KbRelation::kIsA, KbRelation::kInstanceOf, KbRelation::kMadeOf,
                         KbRelation::kPartOf}) {
    for (const auto& [h, w] : Linked(kb, name, rel, true, known)) heads[h] = std::max(heads[h], w);
  }
  if (!heads.empty()) {
    std::vector<std::pair<std::string, double>> sorted(heads.begin(), heads.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    r.kind = K::kSuperordinate;
    for (size_t i = 0; i < sorted.size() && i < kMaxSuperordinateMembers; ++i) {
      r.members.push_back(sorted[i].first);
    }
    return r;
  }
  auto group = Linked(kb, name, KbRelation::kMemberOf, true, known);
  if (!group.empty()) {
    r.kind = K::kGroup;
    r.min_count = 2;
    for (const auto& [h, w] : group) r.members.push_back(h);
    return r;
  }
  if (IsAreaWord(name)) {
    r.kind = K::kSubObject;
    r.members.assign(known.begin(), known.end());
    return r;
  }
  std::vector<std::string> hosts;
  if (name == "shirt" && known.count("person")) hosts.push_back("person");
  for (const auto& t : kb.Query(name, KbRelation::kPartOf, std::nullopt)) {
    if (t.weight >= kb.weight_floor && known.count(t.tail) &&
        std::find(hosts.begin(), hosts.end(), t.tail) == hosts.end()) {
      hosts.push_back(t.tail);
    }
  }
  if (!hosts.empty()) {
    r.kind = K::kSubObject;
    r.members = hosts;
    r.hosts = hosts;
    return r;
  }
  r.kind = K::kUnknown;
  return r;
}

RelationPriors RelationPriors::Parse(std::string_view json_text, const std::string& source) {
  RelationPriors out;
  try {
    auto j = nlohmann::json::parse(json_text);
    if (!j.is_array()) throw FormatError(source, 0, "expected a JSON array");
    for (const auto& e : j) {
      RelationPrior p;
      p.subject = e.at("subject").get<std::string>();
      p.relation = e.at("relation").get<std::string>();
      p.object = e.at("object").get<std::string>();
      p.frequency = e.at("frequency").get<double>();
      const auto& off = e.at("offset");
      p.dx = off.at("dx").get<double>();
      p.dy = off.at("dy").get<double>();
      p.spread = off.at("spread").get<double>();
      if (p.frequency < 1) throw FormatError(source, 0, "frequency must be at least 1");
      if (p.spread < 0) throw FormatError(source, 0, "spread must be nonnegative");
      out.Add(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(source, 0, e.what());
  }
  return out;
}

RelationPriors RelationPriors::Load(const std::string& path) {
  return Parse(ReadFile(path), path);
}

std::vector<RelationPrior> RelationPriors::ForSubject(std::string_view cls) const {
  std::vector<RelationPrior> out;
  for (const auto& p : priors_) {
    if (p.subject == cls) out.push_back(p);
  }
  return out;
}

std::optional<RelationPrior> BestPrior(std::string_view cls, const RelationPriors& priors,
                                       const std::set<std::string>& known) {
  std::optional<RelationPrior> best;
  for (const auto& p : priors.ForSubject(cls)) {
    if (!known.count(p.object)) continue;
    if (!best || p.frequency > best->frequency ||
        (p.frequency == best->frequency && p.object < best->object)) {
      best = p;
    }
  }
  return best;
}

Box PriorRegion(const RelationPrior& p, const Box& a) {
  double gx = 2 * p.spread * a.w;
  double gy = 2 * p.spread * a.h;
  return {a.x + p.dx * a.w - gx, a.y + p.dy * a.h - gy, a.w + 2 * gx, a.h + 2 * gy};
}

}  // namespace cqa
