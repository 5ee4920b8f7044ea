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

// The cqa command line: ask, repl, batch and gen.

#ifndef CQA_CLI_H_
#define CQA_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace cqa {

inline constexpr int kExitUsage = 1;
inline constexpr int kExitFileError = 2;
inline constexpr int kExitParseError = 3;

// args excludes the program name. Answers go to out, diagnostics to err.
int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err);

}  // namespace cqa

#endif  // CQA_CLI_H_
