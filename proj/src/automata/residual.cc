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


#include "svmweave/automata/residual.h"

namespace svmweave::automata {

std::set<int> MarkViolatingStates(const Nfa& cfg_automaton, const Nfa& bad) {
  std::set<int> marked;
  for (int q = 0; q < cfg_automaton.state_count(); ++q) {
    Nfa product = Product(cfg_automaton.WithInitial({q}), bad);
    if (product.IsEmpty()) continue;
    for (int s : CoreachableNonEmpty(product)) {
      marked.insert(product.tag(s).left);
    }
  }
  return marked;
}

namespace {

// Copy of `a` whose states tagged with a hidden instruction emit epsilon.
Nfa Silence(const Nfa& a, const std::set<int>& hidden) {
  Nfa out(a.alphabet());
  for (int q = 0; q < a.state_count(); ++q) {
    out.AddState(a.tag(q));
    out.SetAccepting(q, a.IsAccepting(q));
  }
  for (const Transition& t : a.transitions()) {
    bool silent = hidden.count(a.tag(t.from).instruction) > 0;
    out.AddTransition(t.from, silent ? kEpsilon : t.symbol, t.to);
  }
  for (int q : a.initial()) out.AddInitial(q);
  return out;
}

// `bad` with a phase bit: state 2r+1 means r after at least one symbol.
Nfa Phased(const Nfa& bad) {
  Nfa out(bad.alphabet());
  for (int r = 0; r < bad.state_count(); ++r) {
    for (int phase = 0; phase < 2; ++phase) {
      int s = out.AddState({.label = std::to_string(r) + "/" + std::to_string(phase)});
      out.SetAccepting(s, bad.IsAccepting(r));
    }
  }
  for (const Transition& t : bad.transitions()) {
    for (int phase = 0; phase < 2; ++phase) {
      int next = t.symbol == kEpsilon ? phase : 1;
      out.AddTransition(2 * t.from + phase, t.symbol, 2 * t.to + next);
    }
  }
  for (int r : bad.initial()) out.AddInitial(2 * r);
  return out;
}

// Hidden event instructions visited strictly inside a bad word of the
// automaton in which the hidden states are silent.
std::set<int> JoinedInstructions(const Nfa& a, const std::set<int>& hidden,
                                 const Nfa& phased_bad) {
  Nfa silent = Silence(a, hidden);
  std::set<int> all;
  for (int q = 0; q < silent.state_count(); ++q) all.insert(q);
  Nfa product = Product(silent.WithInitial(all), phased_bad);
  std::set<int> out;
  for (int s : CoreachableNonEmpty(product)) {
    const StateTag& tag = product.tag(s);
    int instruction = silent.tag(tag.left).instruction;
    if (tag.right % 2 == 1 && hidden.count(instruction) > 0) {
      out.insert(instruction);
    }
  }
  return out;
}

}  // namespace

std::string ResidualIneligibility(const vm::Program& program,
                                  const vm::Method& m, const EventSpec& spec) {
  const std::string qname = m.QualifiedName();
  if (m.is_extern) return "extern method";
  if (program.EntryName() != qname) {
    return "not the entry method; it may run more than once";
  }
  for (const vm::Method& other : program.methods()) {
    for (const vm::Instruction& ins : other.body) {
      if (ins.opcode != vm::Opcode::kCall) continue;
      if (ins.text == qname) return "called by " + other.QualifiedName();
      if (other.QualifiedName() == qname) {
        const vm::Method* callee = program.Find(ins.text);
        if (callee != nullptr && !callee->is_extern) {
          return "calls non-extern method " + ins.text;
        }
      } else if (spec.Match(ins.text) != nullptr) {
        return "event calls also occur in " + other.QualifiedName();
      }
    }
  }
  return {};
}

ResidualPlan ComputeResidualPlan(const vm::Program& program,
                                 const vm::Method& m, const EventSpec& spec,
                                 const Nfa& bad) {
  ResidualPlan plan;
  plan.method = m.QualifiedName();
  plan.automaton = MethodAutomaton(m, spec);
  const Nfa& a = plan.automaton;
  std::set<int> events;
  for (int q = 0; q < a.state_count(); ++q) {
    if (a.tag(q).instruction >= 0) {
      plan.event_states.insert(q);
      events.insert(a.tag(q).instruction);
    }
  }
  plan.reason = ResidualIneligibility(program, m, spec);
  plan.eligible = plan.reason.empty();
  plan.marked = MarkViolatingStates(a, bad);
  if (!plan.eligible) {
    plan.keep = events;
    return plan;
  }
  for (int q : plan.marked) {
    if (a.tag(q).instruction >= 0) plan.keep.insert(a.tag(q).instruction);
  }
  for (int i : events) {
    if (plan.keep.count(i) == 0) plan.hide.insert(i);
  }
  Nfa phased = Phased(bad);
  while (!plan.hide.empty()) {
    std::set<int> joined = JoinedInstructions(a, plan.hide, phased);
    if (joined.empty()) break;
    for (int i : joined) {
      plan.hide.erase(i);
      plan.keep.insert(i);
      plan.separators.insert(i);
    }
  }
  return plan;
}

}  // namespace svmweave::automata
