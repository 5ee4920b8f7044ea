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

// Constrained-English question parser. Produces ternary expressions
// [subject relation object] and the query target.

#ifndef CQA_QPARSE_H_
#define CQA_QPARSE_H_

#include <string>
#include <string_view>
#include <vector>

#include "cqa/lexicon.h"

namespace cqa {

// A concept name bound to a variable. var == 0 marks a literal (or null when the
// name is empty too). An empty name with var > 0 is an unconstrained
// object ("it", "this", "his").
struct Term {
  std::string name;
  int var = 0;

  bool is_null() const { return var == 0 && name.empty(); }
  bool operator==(const Term&) const = default;
};

enum class TernaryKind {
  kBe,              // [car#1 be null]
  kHasProperty,     // checked after quantification
  kHasRestriction,  // narrows the domain before quantification
  kHasQuantifier,   // object literal "all" or a positive integer
  kPropertyQuery,   // arg = function name
  kSetQuery,        // arg = set function name
  kRelation,        // arg = relation name, object = second variable
};

struct TernaryExpression {
  Term subject;
  TernaryKind kind = TernaryKind::kBe;
  std::string arg;
  Term object;
  bool query = false;

  bool operator==(const TernaryExpression&) const = default;
};

// "[car#1 has_property red]", "?-[chair#1 property_query:color null]".
std::string ToString(const TernaryExpression& t);

struct QueryTarget {
  enum class Kind { kExistence, kClass, kPropertyValue, kSetValue };
  Kind kind = Kind::kExistence;
  std::string function;  // property or set function name for value targets
  int variable = 0;      // 0 for existence

  bool operator==(const QueryTarget&) const = default;
};

std::string ToString(const QueryTarget& t);

struct ParsedQuestion {
  std::vector<TernaryExpression> ternaries;
  QueryTarget target;
};

struct Token {
  std::string text;
  size_t position = 0;  // character offset in the question
};

// Lowercases, drops '?', '.', ',' and splits a possessive "'s" into its
// own token.
std::vector<Token> Tokenize(std::string_view text);

// Throws UnknownWordError for out-of-lexicon tokens and ParseError when
// the token sequence matches no question template.
ParsedQuestion ParseQuestion(std::string_view text, const Lexicon& lexicon = Lexicon::Default());

}  // namespace cqa

#endif  // CQA_QPARSE_H_
