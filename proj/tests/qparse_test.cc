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

#include "cqa/qparse.h"

#include <gtest/gtest.h>

#include "cqa/errors.h"
#include "cqa/lexicon.h"
#include "cqa/qgraph.h"

namespace cqa {
namespace {

std::vector<std::string> Strings(const ParsedQuestion& q) {
  std::vector<std::string> out;
  for (const auto& t : q.ternaries) out.push_back(ToString(t));
  return out;
}

TEST(LexiconTest, LooksUpWordClasses) {
  const Lexicon& lex = Lexicon::Default();
  EXPECT_EQ(lex.Lookup("red"), LexicalClass::kPropertyAdjective);
  EXPECT_EQ(lex.Lookup("to the right of"), LexicalClass::kRelationPhrase);
  EXPECT_EQ(lex.Lookup("flibber"), LexicalClass::kUnknown);
  EXPECT_EQ(lex.Lookup("buses"), LexicalClass::kClassNoun);
  EXPECT_EQ(lex.Lookup("the"), LexicalClass::kFunctionWord);
  EXPECT_EQ(lex.Lookup("two"), LexicalClass::kQuantifierWord);
}

TEST(LexiconTest, MatchesLongestPhraseFirst) {
  const Lexicon& lex = Lexicon::Default();
  std::vector<std::string> tokens = {"to", "the", "right", "of", "the", "bus"};
  LexEntry e;
  EXPECT_EQ(lex.MatchLongest(tokens, 0, &e), 4u);
  EXPECT_EQ(e.canonical, "right_of");
  tokens = {"on", "top", "of", "the", "table"};
  EXPECT_EQ(lex.MatchLongest(tokens, 0, &e), 3u);
  EXPECT_EQ(e.canonical, "on");
  tokens = {"in", "front", "of", "x"};
  EXPECT_EQ(lex.MatchLongest(tokens, 0, &e), 3u);
  EXPECT_EQ(e.canonical, "in_front_of");
}

TEST(LexiconTest, Plurals) {
  const Lexicon& lex = Lexicon::Default();
  EXPECT_EQ(lex.Plural("bus"), "buses");
  EXPECT_EQ(lex.Plural("baby"), "babies");
  EXPECT_EQ(lex.Plural("person"), "people");
  EXPECT_EQ(lex.Plural("child"), "children");
  EXPECT_EQ(lex.Plural("sheep"), "sheep");
  EXPECT_EQ(lex.Find("children")->canonical, "child");
  EXPECT_EQ(lex.Find("dogs")->canonical, "dog");
  EXPECT_FALSE(lex.Find("childs").has_value());
}

TEST(LexiconTest, RejectsMalformedLines) {
  EXPECT_THROW(Lexicon::Parse("red\n"), FormatError);
  EXPECT_THROW(Lexicon::Parse("red\tadjective\n"), FormatError);
  Lexicon lex = Lexicon::Parse("# comment\n\nred\tproperty-adjective\n");
  EXPECT_EQ(lex.size(), 1u);
}

TEST(ParseQuestionTest, RedCar) {
  ParsedQuestion q = ParseQuestion("Is there a red car?");
  EXPECT_EQ(Strings(q),
            (std::vector<std::string>{"[car#1 be null]", "[car#1 has_property red]"}));
  EXPECT_EQ(q.target.kind, QueryTarget::Kind::kExistence);
}

TEST(ParseQuestionTest, SingleNoun) {
  ParsedQuestion q = ParseQuestion("Is there a car?");
  EXPECT_EQ(Strings(q), (std::vector<std::string>{"[car#1 be null]"}));
  EXPECT_EQ(q.target.kind, QueryTarget::Kind::kExistence);
}

TEST(ParseQuestionTest, RelationBetweenTwoObjects) {
  ParsedQuestion q = ParseQuestion("Is there a red car to the right of the yellow bus?");
  EXPECT_EQ(Strings(q), (std::vector<std::string>{
                            "[car#1 be null]", "[car#1 has_property red]", "[bus#2 be null]",
                            "[bus#2 has_property yellow]", "[car#1 rel:right_of bus#2]"}));
}

TEST(ParseQuestionTest, ScopingOfAdjectives) {
  ParsedQuestion a = ParseQuestion("Are all dogs small and black?");
  EXPECT_EQ(Strings(a), (std::vector<std::string>{
                            "[dog#1 be null]", "[dog#1 has_quantifier all]",
                            "[dog#1 has_property small]", "[dog#1 has_property black]"}));
  ParsedQuestion b = ParseQuestion("Are all black dogs small?");
  EXPECT_EQ(Strings(b), (std::vector<std::string>{
                            "[dog#1 be null]", "[dog#1 has_quantifier all]",
                            "[dog#1 has_restriction black]", "[dog#1 has_property small]"}));
}

TEST(ParseQuestionTest, QueryTargets) {
  ParsedQuestion color = ParseQuestion("What color is the chair?");
  EXPECT_EQ(color.target.kind, QueryTarget::Kind::kPropertyValue);
  EXPECT_EQ(color.target.function, "color");
  EXPECT_EQ(color.target.variable, 1);
  EXPECT_EQ(ToString(color.ternaries.back()), "?-[chair#1 property_query:color null]");

  ParsedQuestion many = ParseQuestion("How many planes are in the photo?");
  EXPECT_EQ(many.target.kind, QueryTarget::Kind::kSetValue);
  EXPECT_EQ(many.target.function, "quantity");

  ParsedQuestion what = ParseQuestion("What is it?");
  EXPECT_EQ(Strings(what), (std::vector<std::string>{"?-[*#1 be null]"}));
  EXPECT_EQ(what.target.kind, QueryTarget::Kind::kClass);
}

TEST(ParseQuestionTest, Possessives) {
  ParsedQuestion his = ParseQuestion("What color is his shirt?");
  EXPECT_EQ(Strings(his), (std::vector<std::string>{"[shirt#1 be null]", "[*#2 be null]",
                                                    "[shirt#1 rel:part_of *#2]",
                                                    "?-[shirt#1 property_query:color null]"}));
  ParsedQuestion mans = ParseQuestion("What color is the man's shirt?");
  EXPECT_EQ(Strings(mans), (std::vector<std::string>{"[man#1 be null]", "[shirt#2 be null]",
                                                     "[shirt#2 rel:part_of man#1]",
                                                     "?-[shirt#2 property_query:color null]"}));
}

TEST(ParseQuestionTest, RelationWordWithoutObjectIsAProperty) {
  ParsedQuestion q = ParseQuestion("Is the screen on?");
  EXPECT_EQ(Strings(q), (std::vector<std::string>{"[screen#1 be null]",
                                                  "[screen#1 has_property on]"}));
}

TEST(ParseQuestionTest, OrIsTreatedAsAnd) {
  ParsedQuestion a = ParseQuestion("Are the dogs black or small?");
  ParsedQuestion b = ParseQuestion("Are the dogs black and small?");
  EXPECT_EQ(Strings(a), Strings(b));
}

TEST(ParseQuestionTest, Errors) {
  EXPECT_THROW(ParseQuestion("Is there a flibber?"), UnknownWordError);
  try {
    ParseQuestion("Is there a flibber?");
  } catch (const UnknownWordError& e) {
    EXPECT_EQ(e.word(), "flibber");
    EXPECT_EQ(e.position(), 11u);
  }
  EXPECT_THROW(ParseQuestion("Is there a red?"), ParseError);
  EXPECT_THROW(ParseQuestion("Is there a car"), ParseError);
  EXPECT_THROW(ParseQuestion("red car is?"), ParseError);
  try {
    ParseQuestion("Is there a red?");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 14u);
    EXPECT_EQ(e.expected(), std::vector<std::string>{"class noun"});
  }
}

TEST(ParseQuestionTest, Deterministic) {
  const char* q = "Are the two tall children looking at all the red small cats that are on the "
                  "green grass and behind the car?";
  EXPECT_EQ(Strings(ParseQuestion(q)), Strings(ParseQuestion(q)));
}

}  // namespace
}  // namespace cqa
