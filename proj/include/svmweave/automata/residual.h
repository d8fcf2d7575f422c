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


#ifndef SVMWEAVE_AUTOMATA_RESIDUAL_H_
#define SVMWEAVE_AUTOMATA_RESIDUAL_H_

#include <set>
#include <string>

#include "svmweave/automata/cfg_automaton.h"
#include "svmweave/automata/nfa.h"
#include "svmweave/vm/program.h"

namespace svmweave::automata {

// For every state q of the CFG automaton, intersects the automaton started
// at q with the bad-prefix automaton; when the intersection is non-empty,
// marks the CFG component of each product state from which acceptance is
// reachable by a non-empty word. These are exactly the states that lie on a
// path spelling a bad word, up to (not including) the state reached after
// its last symbol.
std::set<int> MarkViolatingStates(const Nfa& cfg_automaton, const Nfa& bad);

struct ResidualPlan {
  std::string method;
  // False when the method's events cannot be analysed in isolation; then
  // every event instruction is kept.
  bool eligible = true;
  std::string reason;
  Nfa automaton;
  std::set<int> marked;        // states of `automaton`
  std::set<int> event_states;  // states tagged with an event instruction
  std::set<int> keep;          // instruction indices
  std::set<int> hide;          // instruction indices
  // Kept event instructions that are not in `marked` states: hiding them
  // would join the surrounding events into a bad word that the full trace
  // does not contain.
  std::set<int> separators;
};

// Empty when `m` may be analysed alone: it is the entry method, nothing
// calls it, it calls no non-extern method, and no other method contains an
// event call. Otherwise the reason.
std::string ResidualIneligibility(const vm::Program& program,
                                  const vm::Method& m, const EventSpec& spec);

ResidualPlan ComputeResidualPlan(const vm::Program& program,
                                 const vm::Method& m, const EventSpec& spec,
                                 const Nfa& bad);

}  // namespace svmweave::automata

#endif  // SVMWEAVE_AUTOMATA_RESIDUAL_H_
