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

#include "cqa/errors.h"

#include "cqa/text.h"

namespace cqa {
namespace {

std::string ParseMessage(size_t position, const std::vector<std::string>& expected,
                         const std::string& found) {
  std::string msg = "parse error at position " + std::to_string(position) + ": found " +
                    (found.empty() ? std::string("end of question") : "'" + found + "'");
  if (!expected.empty()) msg += ", expected " + Join(expected, " | ");
  return msg;
}

}  // namespace

ParseError::ParseError(size_t position, std::vector<std::string> expected,
                       const std::string& found)
    : Error(ParseMessage(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

ParseError::ParseError(const std::string& message, size_t position)
    : Error(message), position_(position) {}

UnknownWordError::UnknownWordError(size_t position, const std::string& word)
    : ParseError("unknown word '" + word + "' at position " + std::to_string(position), position),
      word_(word) {}

}  // namespace cqa
