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


#include "svmweave/automata/nfa.h"

#include <deque>
#include <sstream>

#include "svmweave/support/error.h"

namespace svmweave::automata {

Nfa::Nfa(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (!symbol_index_.emplace(alphabet_[i], static_cast<int>(i)).second) {
      throw Error("duplicate symbol '" + alphabet_[i] + "' in alphabet");
    }
  }
}

std::optional<int> Nfa::SymbolIndex(const std::string& symbol) const {
  auto it = symbol_index_.find(symbol);
  if (it == symbol_index_.end()) return std::nullopt;
  return it->second;
}

int Nfa::AddState(StateTag tag) {
  tags_.push_back(std::move(tag));
  out_.emplace_back();
  accepting_.push_back(false);
  return static_cast<int>(tags_.size()) - 1;
}

void Nfa::AddTransition(int from, int symbol, int to) {
  if (from < 0 || from >= state_count() || to < 0 || to >= state_count()) {
    throw Error("transition references a missing state");
  }
  if (symbol != kEpsilon &&
      (symbol < 0 || symbol >= static_cast<int>(alphabet_.size()))) {
    throw Error("transition symbol outside the alphabet");
  }
  Transition t{from, symbol, to};
  auto& edges = out_[static_cast<std::size_t>(from)];
  for (const Transition& e : edges) {
    if (e == t) return;
  }
  edges.push_back(t);
}

std::vector<Transition> Nfa::transitions() const {
  std::vector<Transition> all;
  for (const auto& edges : out_) all.insert(all.end(), edges.begin(), edges.end());
  return all;
}

void Nfa::SetAccepting(int q, bool accepting) {
  accepting_.at(static_cast<std::size_t>(q)) = accepting;
}

std::set<int> Nfa::accepting() const {
  std::set<int> out;
  for (int q = 0; q < state_count(); ++q) {
    if (accepting_[static_cast<std::size_t>(q)]) out.insert(q);
  }
  return out;
}

std::set<int> Nfa::Closure(std::set<int> states) const {
  std::vector<int> work(states.begin(), states.end());
  while (!work.empty()) {
    int q = work.back();
    work.pop_back();
    for (const Transition& t : out(q)) {
      if (t.symbol == kEpsilon && states.insert(t.to).second) work.push_back(t.to);
    }
  }
  return states;
}

std::set<int> Nfa::Step(const std::set<int>& states, int symbol) const {
  std::set<int> next;
  for (int q : states) {
    for (const Transition& t : out(q)) {
      if (t.symbol == symbol) next.insert(t.to);
    }
  }
  return Closure(std::move(next));
}

bool Nfa::Accepts(const std::vector<int>& word) const {
  std::set<int> current = Closure(initial_);
  for (int symbol : word) {
    current = Step(current, symbol);
    if (current.empty()) return false;
  }
  for (int q : current) {
    if (IsAccepting(q)) return true;
  }
  return false;
}

bool Nfa::AcceptsWord(const std::vector<std::string>& word) const {
  std::vector<int> indices;
  for (const std::string& s : word) {
    auto index = SymbolIndex(s);
    if (!index) throw Error("symbol '" + s + "' is not in the alphabet");
    indices.push_back(*index);
  }
  return Accepts(indices);
}

Nfa Nfa::WithInitial(std::set<int> initial) const {
  Nfa copy = *this;
  copy.initial_ = std::move(initial);
  return copy;
}

bool Nfa::IsEmpty() const {
  for (int q : Reachable(*this)) {
    if (IsAccepting(q)) return false;
  }
  return true;
}

Nfa UniversalNfa(std::vector<std::string> alphabet) {
  Nfa a(std::move(alphabet));
  int q = a.AddState({.label = "all"});
  a.AddInitial(q);
  a.SetAccepting(q);
  for (int s = 0; s < static_cast<int>(a.alphabet().size()); ++s) {
    a.AddTransition(q, s, q);
  }
  return a;
}

Nfa EmptyNfa(std::vector<std::string> alphabet) {
  Nfa a(std::move(alphabet));
  a.AddInitial(a.AddState({.label = "none"}));
  return a;
}

Nfa Product(const Nfa& a, const Nfa& b) {
  if (std::set<std::string>(a.alphabet().begin(), a.alphabet().end()) !=
      std::set<std::string>(b.alphabet().begin(), b.alphabet().end())) {
    throw Error("product of automata over different alphabets");
  }
  // Symbol index of `a` -> symbol index of `b`.
  std::vector<int> to_b;
  for (const std::string& s : a.alphabet()) to_b.push_back(*b.SymbolIndex(s));

  Nfa p(a.alphabet());
  std::map<std::pair<int, int>, int> index;
  std::deque<std::pair<int, int>> work;
  auto state = [&](int l, int r) {
    auto [it, inserted] = index.emplace(std::make_pair(l, r), 0);
    if (inserted) {
      StateTag tag;
      tag.left = l;
      tag.right = r;
      tag.label = "(" + std::to_string(l) + "," + std::to_string(r) + ")";
      it->second = p.AddState(std::move(tag));
      p.SetAccepting(it->second, a.IsAccepting(l) && b.IsAccepting(r));
      work.emplace_back(l, r);
    }
    return it->second;
  };
  for (int l : a.initial()) {
    for (int r : b.initial()) p.AddInitial(state(l, r));
  }
  while (!work.empty()) {
    auto [l, r] = work.front();
    work.pop_front();
    int from = index.at({l, r});
    for (const Transition& ta : a.out(l)) {
      if (ta.symbol == kEpsilon) {
        p.AddEpsilon(from, state(ta.to, r));
        continue;
      }
      for (const Transition& tb : b.out(r)) {
        if (tb.symbol == to_b[static_cast<std::size_t>(ta.symbol)]) {
          p.AddTransition(from, ta.symbol, state(ta.to, tb.to));
        }
      }
    }
    for (const Transition& tb : b.out(r)) {
      if (tb.symbol == kEpsilon) p.AddEpsilon(from, state(l, tb.to));
    }
  }
  return p;
}

std::set<int> Reachable(const Nfa& a) {
  std::set<int> seen(a.initial().begin(), a.initial().end());
  std::vector<int> work(seen.begin(), seen.end());
  while (!work.empty()) {
    int q = work.back();
    work.pop_back();
    for (const Transition& t : a.out(q)) {
      if (seen.insert(t.to).second) work.push_back(t.to);
    }
  }
  return seen;
}

namespace {

// Backward closure of `seed` over every transition.
std::set<int> BackwardClosure(const Nfa& a, std::set<int> seed) {
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(a.state_count()));
  for (const Transition& t : a.transitions()) {
    preds[static_cast<std::size_t>(t.to)].push_back(t.from);
  }
  std::vector<int> work(seed.begin(), seed.end());
  while (!work.empty()) {
    int q = work.back();
    work.pop_back();
    for (int p : preds[static_cast<std::size_t>(q)]) {
      if (seed.insert(p).second) work.push_back(p);
    }
  }
  return seed;
}

}  // namespace

std::set<int> Coreachable(const Nfa& a) {
  return BackwardClosure(a, a.accepting());
}

std::set<int> CoreachableNonEmpty(const Nfa& a) {
  std::set<int> co = Coreachable(a);
  std::set<int> seed;
  for (const Transition& t : a.transitions()) {
    if (t.symbol != kEpsilon && co.count(t.to) > 0) seed.insert(t.from);
  }
  return BackwardClosure(a, std::move(seed));
}

std::string EmitDot(const Nfa& a, const std::set<int>& marked) {
  std::ostringstream out;
  out << "digraph nfa {\n  rankdir=LR;\n";
  for (int q = 0; q < a.state_count(); ++q) {
    const StateTag& tag = a.tag(q);
    std::string label = tag.label.empty() ? std::to_string(q) : tag.label;
    out << "  q" << q << " [label=\"" << q << ": " << label << "\", shape="
        << (marked.count(q) > 0 ? "doublecircle" : "circle");
    if (a.IsAccepting(q)) out << ", style=bold";
    out << "];\n";
  }
  for (int q : a.initial()) {
    out << "  init" << q << " [shape=point];\n  init" << q << " -> q" << q
        << ";\n";
  }
  for (const Transition& t : a.transitions()) {
    out << "  q" << t.from << " -> q" << t.to << " [label=\""
        << (t.symbol == kEpsilon ? std::string("eps")
                                 : a.alphabet()[static_cast<std::size_t>(t.symbol)])
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace svmweave::automata
