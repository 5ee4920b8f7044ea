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

#ifndef CQA_LEXICON_H_
#define CQA_LEXICON_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace cqa {

enum class LexicalClass {
  kClassNoun,
  kPropertyAdjective,
  kRelationPhrase,
  kFunctionWord,
  kQuantifierWord,
  kUnknown,
};

std::string_view Name(LexicalClass c);
std::optional<LexicalClass> ParseLexicalClass(std::string_view name);

struct LexEntry {
  LexicalClass cls = LexicalClass::kUnknown;
  // Lemma for nouns, normalized word for adjectives, relation name for
  // relation phrases, numeric value for numerals.
  std::string canonical;
};

// Word lists for the question grammar. Text format, one entry per line:
//
//   word<TAB>lexical-class[<TAB>canonical]
//
// Blank lines and lines starting with '#' are ignored. Multiword entries
// (relation phrases) use single spaces between words.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon Parse(std::string_view text, const std::string& source = "<lexicon>");
  static Lexicon Load(const std::string& path);

  // The lexicon shipped in data/lexicon.tsv, compiled in.
  static const Lexicon& Default();

  // Entry for a lowercased word or phrase. Class nouns also match their
  // regular plural forms ("buses", "babies", "cats").
  std::optional<LexEntry> Find(std::string_view phrase) const;

  LexicalClass Lookup(std::string_view phrase) const;

  // Longest entry spelled by tokens[pos..]. Returns the number of tokens
  // consumed, 0 when nothing matches.
  size_t MatchLongest(std::span<const std::string> tokens, size_t pos, LexEntry* entry) const;

  std::string Plural(std::string_view noun) const;

  // True when the token is an entry, a plural of one, or a word inside a
  // multiword entry.
  bool KnowsWord(std::string_view token) const;

  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, LexEntry> entries_;
  std::unordered_map<std::string, std::string> plurals_;  // lemma -> irregular plural
  std::unordered_set<std::string> phrase_words_;
  size_t max_phrase_words_ = 1;
};

}  // namespace cqa

#endif  // CQA_LEXICON_H_
