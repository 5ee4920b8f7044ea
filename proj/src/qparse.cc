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

#include <algorithm>
#include <cctype>
#include <initializer_list>

#include "cqa/errors.h"
#include "cqa/text.h"
#include "cqa/vocabulary.h"

namespace cqa {
namespace {

constexpr std::string_view kDeterminers[] = {"a", "an", "the", "this", "these", "those", "any"};
constexpr std::string_view kPossessives[] = {"his", "her", "its", "their"};
constexpr std::string_view kImageWords[] = {"image", "picture", "photo", "scene"};

template <size_t N>
bool OneOf(std::string_view w, const std::string_view (&set)[N]) {
  return std::find(std::begin(set), std::end(set), w) != std::end(set);
}

bool IsNumber(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string KindName(const TernaryExpression& t) {
  switch (t.kind) {
    case TernaryKind::kBe: return "be";
    case TernaryKind::kHasProperty: return "has_property";
    case TernaryKind::kHasRestriction: return "has_restriction";
    case TernaryKind::kHasQuantifier: return "has_quantifier";
    case TernaryKind::kPropertyQuery: return "property_query:" + t.arg;
    case TernaryKind::kSetQuery: return "set_query:" + t.arg;
    case TernaryKind::kRelation: return "rel:" + t.arg;
  }
  return "";
}

std::string TermString(const Term& t) {
  if (t.is_null()) return "null";
  std::string s = t.name.empty() ? "*" : t.name;
  if (t.var > 0) s += "#" + std::to_string(t.var);
  return s;
}

class Parser {
 public:
  Parser(std::string_view text, const Lexicon& lex)
      : lex_(lex), end_pos_(text.find_last_of('?')) {
    tokens_ = Tokenize(text);
    for (const Token& t : tokens_) words_.push_back(t.text);
  }

  ParsedQuestion Run() {
    for (const Token& t : tokens_) {
      if (!IsNumber(t.text) && !lex_.KnowsWord(t.text)) throw UnknownWordError(t.position, t.text);
    }
    if (tokens_.empty()) Fail({"is", "are", "what", "how", "where"});
    if (At("is") || At("are")) {
      ParseYesNo();
    } else if (At("what")) {
      ParseWhat();
    } else if (At("how")) {
      ParseHow();
    } else if (At("where")) {
      Advance();
      ExpectOne({"is", "are"});
      int v = ParseNP();
      AcceptImage();
      Query(v, TernaryKind::kPropertyQuery, "location");
    } else {
      Fail({"is", "are", "what", "how", "where"});
    }
    if (i_ != tokens_.size()) Fail({"end of question"});
    return std::move(out_);
  }

 private:
  // --- token helpers -------------------------------------------------------

  bool AtEnd(size_t k = 0) const { return i_ + k >= tokens_.size(); }
  std::string_view Word(size_t k = 0) const {
    return AtEnd(k) ? std::string_view() : std::string_view(words_[i_ + k]);
  }
  bool At(std::string_view w, size_t k = 0) const { return !AtEnd(k) && Word(k) == w; }
  void Advance(size_t n = 1) { i_ += n; }

  bool Accept(std::string_view w) {
    if (!At(w)) return false;
    Advance();
    return true;
  }

  void ExpectOne(std::initializer_list<std::string_view> options) {
    for (std::string_view w : options) {
      if (Accept(w)) return;
    }
    Fail(std::vector<std::string>(options.begin(), options.end()));
  }

  [[noreturn]] void Fail(std::vector<std::string> expected) const {
    size_t pos = AtEnd() ? end_pos_ : tokens_[i_].position;
    throw ParseError(pos, std::move(expected), AtEnd() ? "" : words_[i_]);
  }

  // Longest lexicon entry starting k tokens ahead.
  size_t Match(size_t k, LexEntry* entry) const {
    if (AtEnd(k)) return 0;
    return lex_.MatchLongest(words_, i_ + k, entry);
  }

  size_t RelationAt(size_t k, LexEntry* entry) const {
    LexEntry e;
    size_t n = Match(k, &e);
    if (n == 0 || e.cls != LexicalClass::kRelationPhrase) return 0;
    if (entry) *entry = e;
    return n;
  }

  bool AdjectiveAt(size_t k, LexEntry* entry) const {
    LexEntry e;
    size_t n = Match(k, &e);
    if (n != 1 || e.cls != LexicalClass::kPropertyAdjective) return false;
    if (entry) *entry = e;
    return true;
  }

  bool NounAt(size_t k, LexEntry* entry) const {
    LexEntry e;
    size_t n = Match(k, &e);
    if (n != 1 || e.cls != LexicalClass::kClassNoun) return false;
    if (entry) *entry = e;
    return true;
  }

  bool QuantifierAt(size_t k) const {
    LexEntry e;
    return IsNumber(Word(k)) || (Match(k, &e) == 1 && e.cls == LexicalClass::kQuantifierWord);
  }

  bool ImageAt(size_t k = 0) const {
    return At("in", k) && (At("the", k + 1) || At("this", k + 1)) && !AtEnd(k + 2) &&
           OneOf(Word(k + 2), kImageWords);
  }

  void AcceptImage() {
    if (ImageAt()) Advance(3);
  }

  bool NPStartAt(size_t k) const {
    if (AtEnd(k)) return false;
    std::string_view w = Word(k);
    if (OneOf(w, kDeterminers) || OneOf(w, kPossessives) || w == "it") return true;
    return QuantifierAt(k) || AdjectiveAt(k, nullptr) || NounAt(k, nullptr);
  }

  struct State {
    size_t i;
    int next_var;
    size_t concepts;
    size_t ternaries;
  };

  State Save() const { return {i_, next_var_, concepts_.size(), out_.ternaries.size()}; }

  void Restore(const State& s) {
    i_ = s.i;
    next_var_ = s.next_var;
    concepts_.resize(s.concepts);
    out_.ternaries.resize(s.ternaries);
  }

  // --- ternary emission ----------------------------------------------------

  int NewVar(const std::string& name) {
    int v = next_var_++;
    concepts_.push_back(name);
    Emit({{name, v}, TernaryKind::kBe, "", {}, false});
    return v;
  }

  Term Var(int v) const { return {concepts_[static_cast<size_t>(v - 1)], v}; }

  void Emit(TernaryExpression t) { out_.ternaries.push_back(std::move(t)); }

  void Literal(int v, TernaryKind kind, const std::string& value) {
    Emit({Var(v), kind, "", {value, 0}, false});
  }

  void Relation(int from, const std::string& rel, int to) {
    Emit({Var(from), TernaryKind::kRelation, rel, Var(to), false});
  }

  void Query(int v, TernaryKind kind, const std::string& function) {
    Emit({Var(v), kind, function, {}, true});
    out_.target.kind = kind == TernaryKind::kSetQuery ? QueryTarget::Kind::kSetValue
                                                      : QueryTarget::Kind::kPropertyValue;
    out_.target.function = function;
    out_.target.variable = v;
  }

  void ClassQuery(int v) {
    for (TernaryExpression& t : out_.ternaries) {
      if (t.kind == TernaryKind::kBe && t.subject.var == v) t.query = true;
    }
    out_.target = {QueryTarget::Kind::kClass, "", v};
  }

  // --- noun phrases --------------------------------------------------------

  // det? quant? adj* noun ('s adj* noun)* postmod*
  int ParseNP(bool postmods = true) {
    if (At("it") || ((At("this") || At("these") || At("those")) && !NPStartAt(1))) {
      Advance();
      return NewVar("");
    }
    bool possessive_pronoun = false;
    if (!AtEnd() && OneOf(Word(), kPossessives)) {
      possessive_pronoun = true;
      Advance();
    } else if (!AtEnd() && OneOf(Word(), kDeterminers)) {
      Advance();
    }
    std::string quantifier;
    if (QuantifierAt(0)) {
      LexEntry e;
      quantifier = IsNumber(Word()) ? std::string(Word()) : (Match(0, &e), e.canonical);
      Advance();
      if (quantifier == "all") {
        Accept("of");
        Accept("the");
      } else if (std::stoi(quantifier) < 1) {
        Fail({"positive number"});
      }
    }
    int head = ParseNominal(quantifier);
    if (possessive_pronoun) Relation(head, "part_of", NewVar(""));
    while (At("'s")) {
      Advance();
      int owned = ParseNominal("");
      Relation(owned, "part_of", head);
      head = owned;
    }
    if (postmods) ParsePostmods(head);
    return head;
  }

  // adj* noun
  int ParseNominal(const std::string& quantifier) {
    std::vector<std::string> adjectives;
    LexEntry e;
    while (RelationAt(0, nullptr) == 0 && AdjectiveAt(0, &e)) {
      adjectives.push_back(e.canonical);
      Advance();
    }
    if (!NounAt(0, &e)) Fail({"class noun"});
    Advance();
    int v = NewVar(e.canonical == "object" ? "" : e.canonical);
    if (!quantifier.empty()) Literal(v, TernaryKind::kHasQuantifier, quantifier);
    TernaryKind kind =
        quantifier == "all" ? TernaryKind::kHasRestriction : TernaryKind::kHasProperty;
    for (const std::string& a : adjectives) Literal(v, kind, a);
    return v;
  }

  void ParsePostmods(int head) {
    while (!AtEnd()) {
      LexEntry rel;
      size_t n = RelationAt(0, &rel);
      if (n > 0 && !ImageAt() && NPStartAt(n)) {
        Advance(n);
        Relation(head, rel.canonical, ParseNP());
      } else if ((At("that") || At("which") || At("who")) && (At("is", 1) || At("are", 1))) {
        Advance(2);
        ParsePredicates(head);
      } else {
        return;
      }
    }
  }

  // --- predicates ----------------------------------------------------------

  void ParsePredicate(int subject) {
    LexEntry e;
    size_t n = RelationAt(0, &e);
    if (n > 0 && !ImageAt()) {
      if (NPStartAt(n)) {
        Advance(n);
        Relation(subject, e.canonical, ParseNP());
      } else {
        // "Is the screen on?": a relation word used as a property.
        std::string phrase;
        for (size_t k = 0; k < n; ++k) phrase += (k ? " " : "") + std::string(Word(k));
        Advance(n);
        Literal(subject, TernaryKind::kHasProperty, phrase);
      }
      return;
    }
    if (AdjectiveAt(0, &e)) {
      Advance();
      Literal(subject, TernaryKind::kHasProperty, e.canonical);
      return;
    }
    Fail({"property", "relation"});
  }

  // adj* noun starting k tokens ahead.
  bool NominalAt(size_t k) const {
    while (RelationAt(k, nullptr) == 0 && AdjectiveAt(k, nullptr)) ++k;
    return NounAt(k, nullptr);
  }

  bool PredicateStartAt(size_t k) const {
    if (RelationAt(k, nullptr) > 0) return !ImageAt(k);
    return AdjectiveAt(k, nullptr) && !NominalAt(k);
  }

  void ParsePredicates(int subject) {
    ParsePredicate(subject);
    while ((At("and") || At("or")) && PredicateStartAt(1)) {
      Advance();
      ParsePredicate(subject);
    }
  }

  // --- templates -----------------------------------------------------------

  void ParseYesNo() {
    Advance();  // is / are
    if (Accept("there")) {
      ParseNP();
      while ((At("and") || At("or")) && NPStartAt(1)) {
        Advance();
        ParseNP();
      }
      AcceptImage();
      return;
    }
    if ((At("this") || At("it")) && (At("a", 1) || At("an", 1))) {
      Advance(2);
      ParseNP();
      return;
    }
    // The subject's own postmodifiers would swallow a relation predicate
    // ("Are the children looking at the cats?"); retry without them.
    State saved = Save();
    int subject = ParseNP();
    if (!PredicateStartAt(0)) {
      Restore(saved);
      subject = ParseNP(/*postmods=*/false);
    }
    ParsePredicates(subject);
    AcceptImage();
  }

  static bool IsFunctionWord(std::string_view w) {
    return w == "color" || w == "colour" || w == "colors" || w == "size" || w == "age" ||
           w == "gender" || w == "location" || w == "type";
  }

  static std::string FunctionName(std::string_view w) {
    return w == "colour" ? "color" : std::string(w);
  }

  void ParseWhat() {
    Advance();  // what
    if ((At("kind") || At("type")) && At("of", 1)) {
      Advance(2);
      int v = ParseNP();
      ExpectOne({"is", "are"});
      if (!AtEnd()) ExpectOne({"this", "it", "these", "those", "they"});
      AcceptImage();
      ClassQuery(v);
      return;
    }
    if (!AtEnd() && IsFunctionWord(Word())) {
      std::string f = FunctionName(Word());
      Advance();
      ExpectOne({"is", "are"});
      int v = ParseNP();
      AcceptImage();
      Query(v, TernaryKind::kPropertyQuery, f);
      return;
    }
    if (Accept("difference")) {
      ExpectOne({"does"});
      ExpectOne({"one"});
      int v = ParseNP();
      ExpectOne({"have"});
      Query(v, TernaryKind::kSetQuery, "difference");
      return;
    }
    ExpectOne({"is", "are"});
    if (At("the") && IsFunctionWord(Word(1)) && At("of", 2)) {
      std::string f = FunctionName(Word(1));
      Advance(3);
      int v = ParseNP();
      AcceptImage();
      Query(v, TernaryKind::kPropertyQuery, f);
      return;
    }
    if ((At("it") || At("this")) && AtEnd(1)) {
      Advance();
      ClassQuery(NewVar(""));
      return;
    }
    if (At("similar") && At("for", 1)) {
      Advance(2);
      int v = ParseNP();
      AcceptImage();
      Query(v, TernaryKind::kSetQuery, "similarity");
      return;
    }
    LexEntry rel;
    if (size_t n = RelationAt(0, &rel); n > 0 && NPStartAt(n)) {
      // "What is on the table?"
      Advance(n);
      int x = NewVar("");
      Relation(x, rel.canonical, ParseNP());
      ClassQuery(x);
      return;
    }
    int subject = ParseNP();
    if (size_t n = RelationAt(0, &rel); n > 0) {
      // "What is the dog looking at?"
      Advance(n);
      int y = NewVar("");
      Relation(subject, rel.canonical, y);
      ClassQuery(y);
      return;
    }
    AcceptImage();
    ClassQuery(subject);
  }

  void ParseHow() {
    Advance();  // how
    if (Accept("many")) {
      int v = ParseNP();
      if (Accept("are") || Accept("is")) {
        if (Accept("there")) {
          AcceptImage();
        } else if (ImageAt()) {
          AcceptImage();
        } else if (!AtEnd()) {
          ParsePredicates(v);
          AcceptImage();
        }
      } else if (At("can") || At("do")) {
        Advance();
        ExpectOne({"you"});
        ExpectOne({"see"});
        AcceptImage();
      } else {
        AcceptImage();
      }
      Query(v, TernaryKind::kSetQuery, "quantity");
      return;
    }
    ExpectOne({"is"});
    ExpectOne({"one"});
    int v = ParseNP();
    ExpectOne({"not"});
    ExpectOne({"like"});
    ExpectOne({"the"});
    ExpectOne({"others"});
    Query(v, TernaryKind::kSetQuery, "difference");
  }

  const Lexicon& lex_;
  size_t end_pos_;
  std::vector<Token> tokens_;
  std::vector<std::string> words_;
  size_t i_ = 0;
  int next_var_ = 1;
  std::vector<std::string> concepts_;
  ParsedQuestion out_;
};

}  // namespace

std::string ToString(const TernaryExpression& t) {
  return std::string(t.query ? "?-" : "") + "[" + TermString(t.subject) + " " + KindName(t) +
         " " + TermString(t.object) + "]";
}

std::string ToString(const QueryTarget& t) {
  switch (t.kind) {
    case QueryTarget::Kind::kExistence: return "existence";
    case QueryTarget::Kind::kClass: return "class #" + std::to_string(t.variable);
    case QueryTarget::Kind::kPropertyValue:
      return "property:" + t.function + " #" + std::to_string(t.variable);
    case QueryTarget::Kind::kSetValue:
      return "set:" + t.function + " #" + std::to_string(t.variable);
  }
  return "";
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '?' || c == '.' || c == ',') {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '?' && text[i] != '.' && text[i] != ',') {
      ++i;
    }
    std::string word = ToLower(text.substr(start, i - start));
    if (word.size() > 2 && word.compare(word.size() - 2, 2, "'s") == 0) {
      tokens.push_back({word.substr(0, word.size() - 2), start});
      tokens.push_back({"'s", start + word.size() - 2});
    } else {
      tokens.push_back({word, start});
    }
  }
  return tokens;
}

ParsedQuestion ParseQuestion(std::string_view text, const Lexicon& lexicon) {
  std::string_view trimmed = Trim(text);
  if (trimmed.empty() || trimmed.back() != '?') {
    throw ParseError(text.size(), {"?"}, "");
  }
  return Parser(text, lexicon).Run();
}

}  // namespace cqa
