// Copyright 2026 The svmweave Authors
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


#ifndef SVMWEAVE_AUTOMATA_REGEX_H_
#define SVMWEAVE_AUTOMATA_REGEX_H_

#include <string>
#include <string_view>
#include <vector>

#include "svmweave/automata/nfa.h"

namespace svmweave::automata {

// Compiles a regular expression over `alphabet` into an epsilon-NFA by
// Thompson's construction.
//
//   expr   := term ('|' term)*
//   term   := factor+
//   factor := atom ('*' | '+' | '?')*
//   atom   := symbol | '(' expr ')'
//
// Symbols are identifiers separated by whitespace or operators ("c n* u+ n").
// An identifier that is not in the alphabet but consists only of
// single-character symbols is read as their concatenation ("cn*u+n").
// Throws RegexError with the offending position.
Nfa CompileRegex(std::string_view regex, const std::vector<std::string>& alphabet);

}  // namespace svmweave::automata

#endif  // SVMWEAVE_AUTOMATA_REGEX_H_
