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

#include "cqa/answer.h"

#include <sstream>

#include "cqa/errors.h"
#include "json.hpp"

namespace cqa {
namespace {

using json = nlohmann::ordered_json;

FailureRecord::Kind ParseFailureKind(const std::string& s) {
  for (auto k : {FailureRecord::Kind::kClass, FailureRecord::Kind::kProperty,
                 FailureRecord::Kind::kRelation, FailureRecord::Kind::kQuantifier}) {
    if (Name(k) == s) return k;
  }
  throw FormatError("<answer>", 0, "unknown failure kind '" + s + "'");
}

}  // namespace

std::string_view Name(FailureRecord::Kind k) {
  switch (k) {
    case FailureRecord::Kind::kClass: return "class";
    case FailureRecord::Kind::kProperty: return "property";
    case FailureRecord::Kind::kRelation: return "relation";
    case FailureRecord::Kind::kQuantifier: return "quantifier";
  }
  return "";
}

std::string RenderText(const Answer& a, const RenderOptions& o) {
  std::ostringstream out;
  out << a.value << "\n";
  if (o.explain && !a.summary.empty() && a.summary != a.value) out << "  " << a.summary << "\n";
  if (o.elaborations) {
    for (const auto& e : a.elaborations) out << "  + " << e << "\n";
  }
  if (o.alternatives) {
    for (const auto& alt : a.alternatives) out << "  ~ " << alt << "\n";
  }
  if (o.explain) {
    for (const auto& d : a.diagnostics) {
      out << "  ! " << Name(d.kind) << " " << d.element << ": " << d.reason << "\n";
    }
  }
  if (o.trace) {
    for (const auto& t : a.trace) {
      out << "  > " << t.fragment;
      if (t.context != 0) out << " @" << t.context;
      out << " -> " << t.outcome << "\n";
    }
  }
  return out.str();
}

std::string AnswerToJson(const Answer& a) {
  json j;
  j["value"] = a.value;
  j["summary"] = a.summary;
  j["elaborations"] = a.elaborations;
  j["alternatives"] = a.alternatives;
  j["diagnostics"] = json::array();
  for (const auto& d : a.diagnostics) {
    j["diagnostics"].push_back({{"kind", Name(d.kind)},
                                {"element", d.element},
                                {"objects", d.objects},
                                {"reason", d.reason}});
  }
  j["trace"] = json::array();
  for (const auto& t : a.trace) {
    j["trace"].push_back({{"fragment", t.fragment}, {"context", t.context}, {"outcome", t.outcome}});
  }
  return j.dump();
}

Answer AnswerFromJson(std::string_view text) {
  Answer a;
  try {
    json j = json::parse(text);
    a.value = j.at("value").get<std::string>();
    a.summary = j.at("summary").get<std::string>();
    a.elaborations = j.at("elaborations").get<std::vector<std::string>>();
    a.alternatives = j.at("alternatives").get<std::vector<std::string>>();
    for (const auto& d : j.at("diagnostics")) {
      a.diagnostics.push_back({ParseFailureKind(d.at("kind").get<std::string>()),
                               d.at("element").get<std::string>(),
                               d.at("objects").get<std::vector<int>>(),
                               d.at("reason").get<std::string>()});
    }
    for (const auto& t : j.at("trace")) {
      a.trace.push_back({t.at("fragment").get<std::string>(), t.at("context").get<int>(),
                         t.at("outcome").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw FormatError("<answer>", 0, e.what());
  }
  return a;
}

}  // namespace cqa
