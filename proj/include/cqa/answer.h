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

// The answer record and its text / JSON renderings.

#ifndef CQA_ANSWER_H_
#define CQA_ANSWER_H_

#include <string>
#include <string_view>
#include <vector>

namespace cqa {

struct FailureRecord {
  enum class Kind { kClass, kProperty, kRelation, kQuantifier };
  Kind kind = Kind::kClass;
  std::string element;
  std::vector<int> objects;
  std::string reason;

  bool operator==(const FailureRecord&) const = default;
};

std::string_view Name(FailureRecord::Kind k);

struct TraceEntry {
  std::string fragment;  // PatternInstance rendering
  int context = 0;       // bound parent object, 0 at a root
  std::string outcome;

  bool operator==(const TraceEntry&) const = default;
};

struct Answer {
  std::string value;
  std::string summary;  // full sentence, figure phrasing
  std::vector<std::string> elaborations;
  std::vector<std::string> alternatives;
  std::vector<FailureRecord> diagnostics;
  std::vector<TraceEntry> trace;

  bool operator==(const Answer&) const = default;
};

struct RenderOptions {
  bool explain = false;  // summary and diagnostics
  bool alternatives = true;
  bool elaborations = true;
  bool trace = false;
};

// Value on the first line, then the optional sections.
std::string RenderText(const Answer& a, const RenderOptions& options);

// Fixed field order: value, summary, elaborations, alternatives,
// diagnostics, trace.
std::string AnswerToJson(const Answer& a);
Answer AnswerFromJson(std::string_view json_text);

}  // namespace cqa

#endif  // CQA_ANSWER_H_
