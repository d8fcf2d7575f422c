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


#ifndef SVMWEAVE_AUTOMATA_CFG_AUTOMATON_H_
#define SVMWEAVE_AUTOMATA_CFG_AUTOMATON_H_

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "svmweave/automata/nfa.h"
#include "svmweave/cfg/cfg.h"
#include "svmweave/vm/program.h"

namespace svmweave::automata {

enum class EventDirection { kBefore, kAfter };

struct EventRule {
  std::string callee_pattern;  // glob over the qualified callee name
  EventDirection direction = EventDirection::kBefore;
  std::string symbol;
};

struct EventSpec {
  std::vector<std::string> alphabet;
  std::vector<EventRule> rules;

  // First rule matching `callee`, or nullptr.
  const EventRule* Match(const std::string& callee) const;
};

// Symbol index (into spec.alphabet) per instruction of `m`; kEpsilon for
// instructions that are not visible calls matched by a rule. A call carries
// at most one symbol: the first matching rule wins.
std::vector<int> FilterEvents(const vm::Method& m, const cfg::Cfg& g,
                              const EventSpec& spec);

struct GraphNode {
  int id = 0;
  // One instruction for symbol nodes; possibly several (or none, for empty
  // blocks) for merged epsilon nodes.
  std::vector<int> instructions;
  int symbol = kEpsilon;
};

// Instruction-level graph obtained by splitting every block into one node
// per instruction.
struct ModifiedGraph {
  std::vector<GraphNode> nodes;
  std::set<std::pair<int, int>> edges;
  int entry = 0;

  int OutDegree(int node) const;
  int InDegree(int node) const;
};

// Splits blocks into chained per-instruction nodes; block edges leave the
// last node and enter the first. With `merge_epsilon`, an edge a -> b
// between two epsilon nodes is contracted when a has no other successor, or
// b has no other predecessor and is not the entry; epsilon self loops are
// dropped. Both contractions preserve the automaton language.
ModifiedGraph SplitBlocks(const cfg::Cfg& g, const std::vector<int>& events,
                          bool merge_epsilon = true);

// One state per node, initial state at the entry node, every state
// accepting. A node's outgoing transitions carry its symbol (or epsilon).
// Tags record the node and, for symbol nodes, the instruction.
Nfa BuildCfgAutomaton(const ModifiedGraph& graph,
                      const std::vector<std::string>& alphabet);

// FilterEvents + SplitBlocks + BuildCfgAutomaton on the method's CFG.
Nfa MethodAutomaton(const vm::Method& m, const EventSpec& spec);

}  // namespace svmweave::automata

#endif  // SVMWEAVE_AUTOMATA_CFG_AUTOMATON_H_
