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

// Small string helpers.

#ifndef CQA_TEXT_H_
#define CQA_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace cqa {

std::vector<std::string_view> Split(std::string_view s, char sep);
std::vector<std::string_view> SplitLines(std::string_view s);
std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// "a", "b" and "c" -> "a, b and c".
std::string JoinAnd(const std::vector<std::string>& parts);

// Shortest decimal rendering: 95 -> "95", 95.5 -> "95.5".
std::string FormatNumber(double v);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace cqa

#endif  // CQA_TEXT_H_
