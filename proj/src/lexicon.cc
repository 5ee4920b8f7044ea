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

#include "cqa/lexicon.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "cqa/errors.h"
#include "cqa/text.h"

namespace cqa {

// Defined in the generated lexicon_data.cc.
extern const char* const kDefaultLexiconText;

namespace {

constexpr std::pair<LexicalClass, std::string_view> kClassNames[] = {
    {LexicalClass::kClassNoun, "class-noun"},
    {LexicalClass::kPropertyAdjective, "property-adjective"},
    {LexicalClass::kRelationPhrase, "relation-phrase"},
    {LexicalClass::kFunctionWord, "function-word"},
    {LexicalClass::kQuantifierWord, "quantifier-word"},
    {LexicalClass::kUnknown, "unknown"},
};

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool IsVowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

}  // namespace

std::string_view Name(LexicalClass c) {
  for (const auto& [cls, name] : kClassNames) {
    if (cls == c) return name;
  }
  return "unknown";
}

std::optional<LexicalClass> ParseLexicalClass(std::string_view name) {
  for (const auto& [cls, n] : kClassNames) {
    if (n == name && cls != LexicalClass::kUnknown) return cls;
  }
  return std::nullopt;
}

Lexicon Lexicon::Parse(std::string_view text, const std::string& source) {
  Lexicon lex;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    std::vector<std::string_view> fields = Split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw FormatError(source, line_no, "expected word<TAB>lexical-class[<TAB>canonical]");
    }
    std::string word = ToLower(Trim(fields[0]));
    auto cls = ParseLexicalClass(Trim(fields[1]));
    if (word.empty()) throw FormatError(source, line_no, "empty word");
    if (!cls) {
      throw FormatError(source, line_no, "unknown lexical class '" + std::string(fields[1]) + "'");
    }
    LexEntry entry{*cls, fields.size() == 3 ? std::string(Trim(fields[2])) : word};
    if (entry.canonical.empty()) entry.canonical = word;
    if (entry.cls == LexicalClass::kClassNoun && entry.canonical != word) {
      lex.plurals_.emplace(entry.canonical, word);
    }
    size_t words = static_cast<size_t>(std::count(word.begin(), word.end(), ' ')) + 1;
    lex.max_phrase_words_ = std::max(lex.max_phrase_words_, words);
    if (words > 1) {
      for (std::string_view w : Split(word, ' ')) lex.phrase_words_.emplace(w);
    }
    lex.entries_[word] = std::move(entry);
  }
  return lex;
}

Lexicon Lexicon::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path);
}

const Lexicon& Lexicon::Default() {
  static const Lexicon lexicon = Parse(kDefaultLexiconText, "data/lexicon.tsv");
  return lexicon;
}

std::optional<LexEntry> Lexicon::Find(std::string_view phrase) const {
  if (auto it = entries_.find(std::string(phrase)); it != entries_.end()) return it->second;
  // Regular plurals of class nouns.
  std::vector<std::string> stems;
  if (EndsWith(phrase, "ies") && phrase.size() > 3) {
    stems.push_back(std::string(phrase.substr(0, phrase.size() - 3)) + "y");
  }
  if (EndsWith(phrase, "es")) stems.emplace_back(phrase.substr(0, phrase.size() - 2));
  if (EndsWith(phrase, "s") && !EndsWith(phrase, "ss")) {
    stems.emplace_back(phrase.substr(0, phrase.size() - 1));
  }
  for (const std::string& stem : stems) {
    auto it = entries_.find(stem);
    if (it != entries_.end() && it->second.cls == LexicalClass::kClassNoun &&
        it->second.canonical == stem && Plural(stem) == phrase) {
      return it->second;
    }
  }
  return std::nullopt;
}

LexicalClass Lexicon::Lookup(std::string_view phrase) const {
  auto entry = Find(phrase);
  return entry ? entry->cls : LexicalClass::kUnknown;
}

size_t Lexicon::MatchLongest(std::span<const std::string> tokens, size_t pos,
                             LexEntry* entry) const {
  size_t limit = std::min(max_phrase_words_, tokens.size() - std::min(pos, tokens.size()));
  for (size_t n = limit; n > 0; --n) {
    std::string phrase = tokens[pos];
    for (size_t k = 1; k < n; ++k) phrase += " " + tokens[pos + k];
    if (auto found = Find(phrase)) {
      if (entry != nullptr) *entry = *found;
      return n;
    }
  }
  return 0;
}

bool Lexicon::KnowsWord(std::string_view token) const {
  return Find(token).has_value() || phrase_words_.count(std::string(token)) > 0;
}

std::string Lexicon::Plural(std::string_view noun) const {
  if (auto it = plurals_.find(std::string(noun)); it != plurals_.end()) return it->second;
  static constexpr std::string_view kInvariant[] = {"sheep", "fish", "deer", "scissors",
                                                    "glasses", "pants", "jeans"};
  std::string s(noun);
  if (std::find(std::begin(kInvariant), std::end(kInvariant), noun) != std::end(kInvariant)) {
    return s;
  }
  if (EndsWith(s, "s") || EndsWith(s, "x") || EndsWith(s, "z") || EndsWith(s, "ch") ||
      EndsWith(s, "sh")) {
    return s + "es";
  }
  if (s.size() > 1 && s.back() == 'y' && !IsVowel(s[s.size() - 2])) {
    return s.substr(0, s.size() - 1) + "ies";
  }
  return s + "s";
}

}  // namespace cqa
