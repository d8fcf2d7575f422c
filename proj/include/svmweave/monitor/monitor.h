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


#ifndef SVMWEAVE_MONITOR_MONITOR_H_
#define SVMWEAVE_MONITOR_MONITOR_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "svmweave/automata/cfg_automaton.h"
#include "svmweave/automata/nfa.h"
#include "svmweave/vm/interpreter.h"

namespace svmweave::monitor {

enum class Verdict { kViolation, kSatisfaction, kUnknown };

// "⊥", "⊤", "?"
std::string_view VerdictSymbol(Verdict v);

enum class Mode { kBad, kGood };

struct Event {
  std::string symbol;
  std::string method;
  int instruction = 0;
  automata::EventDirection direction = automata::EventDirection::kBefore;

  // "<symbol> <owner>.<method>@<instr> <before|after>"
  std::string ToLogLine() const;
  bool operator==(const Event&) const = default;
};

// Extern through which instrumented code reports events:
// Monitor.emit(symbol, "<qname>@<instr>", "before"|"after").
inline constexpr std::string_view kEmitExtern = "Monitor.emit";
inline constexpr int kEmitArity = 3;

// Simulates a prefix automaton over the event stream. A fresh run starts at
// every position, so the verdict becomes final as soon as some factor of the
// trace is accepted; it never changes afterwards.
class Monitor {
 public:
  explicit Monitor(automata::Nfa automaton, Mode mode = Mode::kBad);

  // Throws Error on a symbol outside the alphabet.
  Verdict Step(const std::string& symbol);
  Verdict Step(const Event& e) { return Step(e.symbol); }
  Verdict RunTrace(const std::vector<Event>& events);

  Verdict verdict() const { return verdict_; }
  const std::set<int>& current() const { return current_; }

 private:
  void Latch();

  automata::Nfa automaton_;
  Mode mode_;
  std::set<int> start_;
  std::set<int> current_;
  Verdict verdict_ = Verdict::kUnknown;
};

// Events reported through kEmitExtern, in execution order.
std::vector<Event> TraceFromExecution(const vm::ExecResult& result,
                                      const automata::EventSpec& spec);

// Registers a host for kEmitExtern that records nothing beyond the call.
void RegisterMonitorHost(vm::HostRegistry& registry);

}  // namespace svmweave::monitor

#endif  // SVMWEAVE_MONITOR_MONITOR_H_
