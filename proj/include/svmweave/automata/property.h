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


#ifndef SVMWEAVE_AUTOMATA_PROPERTY_H_
#define SVMWEAVE_AUTOMATA_PROPERTY_H_

#include <string>
#include <string_view>

#include "svmweave/automata/cfg_automaton.h"
#include "svmweave/automata/nfa.h"

namespace svmweave::automata {

// A bad-prefix property over call events:
//
//   alphabet=c,u,n
//   event.c=before List.iterator
//   event.u=before List.add
//   event.n=before Iterator.next
//   bad=c n* u+ n
struct Property {
  EventSpec spec;
  std::string bad;

  // Compiles `bad`; throws RegexError.
  Nfa BadAutomaton() const;
};

// Throws ParseError on malformed lines, unknown symbols or a missing or
// empty `bad` expression.
Property ParseProperty(std::string_view text);

}  // namespace svmweave::automata

#endif  // SVMWEAVE_AUTOMATA_PROPERTY_H_
