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


#ifndef SVMWEAVE_AUTOMATA_NFA_H_
#define SVMWEAVE_AUTOMATA_NFA_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace svmweave::automata {

inline constexpr int kEpsilon = -1;

// Where a state came from. Unused fields stay -1.
struct StateTag {
  int node = -1;         // modified-graph node of a CFG automaton
  int instruction = -1;  // event instruction emitted by that node
  int left = -1;         // product: state of the left operand
  int right = -1;        // product: state of the right operand
  std::string label;

  bool operator==(const StateTag&) const = default;
};

struct Transition {
  int from = 0;
  int symbol = kEpsilon;  // index into the alphabet, or kEpsilon
  int to = 0;

  auto operator<=>(const Transition&) const = default;
};

// Nondeterministic automaton with epsilon transitions. Symbols are stored as
// indices into alphabet().
class Nfa {
 public:
  Nfa() = default;
  explicit Nfa(std::vector<std::string> alphabet);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  // Index of `symbol`, or nullopt.
  std::optional<int> SymbolIndex(const std::string& symbol) const;

  int AddState(StateTag tag = {});
  int state_count() const { return static_cast<int>(tags_.size()); }
  const StateTag& tag(int q) const { return tags_.at(static_cast<std::size_t>(q)); }

  void AddTransition(int from, int symbol, int to);
  void AddEpsilon(int from, int to) { AddTransition(from, kEpsilon, to); }
  const std::vector<Transition>& out(int q) const {
    return out_.at(static_cast<std::size_t>(q));
  }
  std::vector<Transition> transitions() const;

  void AddInitial(int q) { initial_.insert(q); }
  const std::set<int>& initial() const { return initial_; }
  void SetAccepting(int q, bool accepting = true);
  bool IsAccepting(int q) const {
    return accepting_.at(static_cast<std::size_t>(q));
  }
  std::set<int> accepting() const;

  std::set<int> Closure(std::set<int> states) const;
  // Closure of the symbol successors of (already closed) `states`.
  std::set<int> Step(const std::set<int>& states, int symbol) const;
  bool Accepts(const std::vector<int>& word) const;
  // Throws Error on symbols outside the alphabet.
  bool AcceptsWord(const std::vector<std::string>& word) const;

  // Same automaton with a different initial set.
  Nfa WithInitial(std::set<int> initial) const;
  // No accepting state is reachable from the initial states.
  bool IsEmpty() const;

 private:
  std::vector<std::string> alphabet_;
  std::map<std::string, int> symbol_index_;
  std::vector<StateTag> tags_;
  std::vector<std::vector<Transition>> out_;
  std::set<int> initial_;
  std::vector<bool> accepting_;
};

// Accepts every word over `alphabet` (one accepting state with self loops).
Nfa UniversalNfa(std::vector<std::string> alphabet);
// Accepts nothing.
Nfa EmptyNfa(std::vector<std::string> alphabet);

// Synchronous product over a shared alphabet; epsilon moves of either side
// interleave. Built on the fly from the initial pairs, so every state is
// reachable. Tags record the pair. Throws Error when the alphabets differ as
// sets.
Nfa Product(const Nfa& a, const Nfa& b);

// States reachable from the initial set.
std::set<int> Reachable(const Nfa& a);
// States from which an accepting state is reachable (the empty word counts).
std::set<int> Coreachable(const Nfa& a);
// States from which an accepting state is reachable by a non-empty word.
std::set<int> CoreachableNonEmpty(const Nfa& a);

// Graphviz rendering; `marked` states are drawn double-circled.
std::string EmitDot(const Nfa& a, const std::set<int>& marked = {});

}  // namespace svmweave::automata

#endif  // SVMWEAVE_AUTOMATA_NFA_H_
