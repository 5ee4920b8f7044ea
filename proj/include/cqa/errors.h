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

#ifndef CQA_ERRORS_H_
#define CQA_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace cqa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line is 1-based, 0 when not line oriented.
class FormatError : public Error {
 public:
  FormatError(std::string file, int line, const std::string& what)
      : Error(file + (line > 0 ? ":" + std::to_string(line) : "") + ": " + what),
        file_(std::move(file)),
        line_(line) {}
  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Question text does not match the grammar. position is a character offset.
class ParseError : public Error {
 public:
  ParseError(size_t position, std::vector<std::string> expected, const std::string& found);
  size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 protected:
  ParseError(const std::string& message, size_t position);

 private:
  size_t position_;
  std::vector<std::string> expected_;
};

// A token is in none of the lexicons. Derives from ParseError so callers
// that only care about "the question did not parse" catch both.
class UnknownWordError : public ParseError {
 public:
  UnknownWordError(size_t position, const std::string& word);
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class SceneError : public Error {
 public:
  using Error::Error;
};

class UnknownProperty : public Error {
 public:
  explicit UnknownProperty(std::string property)
      : Error("unknown property '" + property + "'"), property_(std::move(property)) {}
  const std::string& property() const { return property_; }

 private:
  std::string property_;
};

class UnknownRelation : public Error {
 public:
  explicit UnknownRelation(std::string relation)
      : Error("unknown relation '" + relation + "'"), relation_(std::move(relation)) {}
  const std::string& relation() const { return relation_; }

 private:
  std::string relation_;
};

class NotApplicable : public Error {
 public:
  NotApplicable(std::string function, std::string cls)
      : Error("'" + function + "' is not applicable to " + cls),
        function_(std::move(function)),
        class_(std::move(cls)) {}
  const std::string& function() const { return function_; }
  const std::string& object_class() const { return class_; }

 private:
  std::string function_;
  std::string class_;
};

class NotDirectional : public Error {
 public:
  explicit NotDirectional(const std::string& relation)
      : Error("relation '" + relation + "' has no spatial search region") {}
};

class BoundExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cqa

#endif  // CQA_ERRORS_H_
