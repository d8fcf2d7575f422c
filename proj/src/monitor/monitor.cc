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


#include "svmweave/monitor/monitor.h"

#include <algorithm>
#include <charconv>

#include "svmweave/support/error.h"

namespace svmweave::monitor {

std::string_view VerdictSymbol(Verdict v) {
  switch (v) {
    case Verdict::kViolation:
      return "⊥";
    case Verdict::kSatisfaction:
      return "⊤";
    case Verdict::kUnknown:
      return "?";
  }
  return "?";
}

std::string Event::ToLogLine() const {
  return symbol + " " + method + "@" + std::to_string(instruction) + " " +
         (direction == automata::EventDirection::kBefore ? "before" : "after");
}

Monitor::Monitor(automata::Nfa automaton, Mode mode)
    : automaton_(std::move(automaton)), mode_(mode) {
  start_ = automaton_.Closure(automaton_.initial());
  current_ = start_;
  Latch();
}

void Monitor::Latch() {
  if (verdict_ != Verdict::kUnknown) return;
  for (int q : current_) {
    if (automaton_.IsAccepting(q)) {
      verdict_ = mode_ == Mode::kBad ? Verdict::kViolation
                                     : Verdict::kSatisfaction;
      return;
    }
  }
}

Verdict Monitor::Step(const std::string& symbol) {
  auto index = automaton_.SymbolIndex(symbol);
  if (!index) throw Error("event symbol '" + symbol + "' is not in the alphabet");
  if (verdict_ != Verdict::kUnknown) return verdict_;
  current_ = automaton_.Step(current_, *index);
  current_.insert(start_.begin(), start_.end());
  Latch();
  return verdict_;
}

Verdict Monitor::RunTrace(const std::vector<Event>& events) {
  for (const Event& e : events) Step(e);
  return verdict_;
}

std::vector<Event> TraceFromExecution(const vm::ExecResult& result,
                                      const automata::EventSpec& spec) {
  std::vector<Event> out;
  for (const vm::HostCall& call : result.host_calls) {
    if (call.callee != kEmitExtern || call.args.size() != kEmitArity) continue;
    if (!call.args[0].is_str() || !call.args[1].is_str()) continue;
    const std::string& symbol = call.args[0].as_str();
    if (std::find(spec.alphabet.begin(), spec.alphabet.end(), symbol) ==
        spec.alphabet.end()) {
      continue;
    }
    Event e;
    e.symbol = symbol;
    const std::string& origin = call.args[1].as_str();
    auto at = origin.rfind('@');
    if (at == std::string::npos) continue;
    e.method = origin.substr(0, at);
    const char* end = origin.data() + origin.size();
    auto [ptr, ec] = std::from_chars(origin.data() + at + 1, end, e.instruction);
    if (ec != std::errc() || ptr != end) continue;
    e.direction = call.args[2].ToString() == "after"
                      ? automata::EventDirection::kAfter
                      : automata::EventDirection::kBefore;
    out.push_back(std::move(e));
  }
  return out;
}

void RegisterMonitorHost(vm::HostRegistry& registry) {
  registry.Register(std::string(kEmitExtern),
                    [](std::span<const vm::Value>, vm::HostEnv&) {
                      return std::optional<vm::Value>();
                    });
}

}  // namespace svmweave::monitor
