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


#include <gtest/gtest.h>

#include "oracles.h"
#include "random_programs.h"
#include "svmweave/automata/property.h"
#include "svmweave/automata/regex.h"
#include "svmweave/monitor/monitor.h"
#include "svmweave/stdlib/pipeline.h"
#include "svmweave/support/error.h"
#include "svmweave/vm/assembler.h"

namespace svmweave::monitor {
namespace {

using automata::CompileRegex;
using vm::Value;

const std::vector<std::string> kAbc = {"a", "b", "c"};

TEST(Monitor, VerdictSymbols) {
  EXPECT_EQ(VerdictSymbol(Verdict::kViolation), "⊥");
  EXPECT_EQ(VerdictSymbol(Verdict::kSatisfaction), "⊤");
  EXPECT_EQ(VerdictSymbol(Verdict::kUnknown), "?");
}

TEST(Monitor, DetectsBadFactorAnywhere) {
  Monitor m(CompileRegex("a b", kAbc));
  EXPECT_EQ(m.Step("c"), Verdict::kUnknown);
  EXPECT_EQ(m.Step("a"), Verdict::kUnknown);
  EXPECT_EQ(m.Step("a"), Verdict::kUnknown);
  EXPECT_EQ(m.Step("b"), Verdict::kViolation);
}

TEST(Monitor, VerdictLatches) {
  Monitor m(CompileRegex("a", kAbc));
  EXPECT_EQ(m.Step("a"), Verdict::kViolation);
  for (const char* s : {"b", "c", "b"}) EXPECT_EQ(m.Step(s), Verdict::kViolation);
  EXPECT_EQ(m.verdict(), Verdict::kViolation);
}

TEST(Monitor, GoodModeReportsSatisfaction) {
  Monitor m(CompileRegex("b c", kAbc), Mode::kGood);
  EXPECT_EQ(m.Step("b"), Verdict::kUnknown);
  EXPECT_EQ(m.Step("c"), Verdict::kSatisfaction);
  EXPECT_EQ(m.Step("a"), Verdict::kSatisfaction);
}

TEST(Monitor, EmptyWordIsAnImmediateVerdict) {
  Monitor m(CompileRegex("a*", kAbc));
  EXPECT_EQ(m.verdict(), Verdict::kViolation);
}

TEST(Monitor, RejectsForeignSymbols) {
  Monitor m(CompileRegex("a", kAbc));
  EXPECT_THROW(m.Step("z"), Error);
}

TEST(Monitor, AgreesWithFactorOracle) {
  testing::Rng rng(17);
  auto words = testing::AllWords(3, 6);
  for (int n = 0; n < 25; ++n) {
    std::string re = testing::RandomRegex(rng, "abc");
    std::string ecma = testing::ToEcmaRegex(re);
    automata::Nfa bad = CompileRegex(re, kAbc);
    for (const auto& w : words) {
      Monitor m(bad);
      std::string letters;
      for (int s : w) {
        letters += static_cast<char>('a' + s);
        m.Step(kAbc[static_cast<std::size_t>(s)]);
      }
      ASSERT_EQ(m.verdict() == Verdict::kViolation,
                testing::HasMatchingFactor(ecma, letters))
          << re << " on '" << letters << "'";
    }
  }
}

TEST(Event, LogLine) {
  Event e{"c", "Demo.main", 6, automata::EventDirection::kBefore};
  EXPECT_EQ(e.ToLogLine(), "c Demo.main@6 before");
  e.direction = automata::EventDirection::kAfter;
  EXPECT_EQ(e.ToLogLine(), "c Demo.main@6 after");
}

TEST(Trace, ReadsEmitCalls) {
  automata::Property prop = testing::EventProperty("a");
  vm::ExecResult r;
  r.host_calls = {
      {"Monitor.emit", {Value::Str("a"), Value::Str("Main.main@3"), Value::Str("before")}},
      {"Ev.a", {}},
      {"Monitor.emit", {Value::Str("zz"), Value::Str("Main.main@4"), Value::Str("before")}},
      {"Monitor.emit", {Value::Str("b"), Value::Str("no-index"), Value::Str("after")}},
      {"Monitor.emit", {Value::Str("c"), Value::Str("A.f@12"), Value::Str("after")}},
  };
  std::vector<Event> trace = TraceFromExecution(r, prop.spec);
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_EQ(trace[0], (Event{"a", "Main.main", 3, automata::EventDirection::kBefore}));
  EXPECT_EQ(trace[1], (Event{"c", "A.f", 12, automata::EventDirection::kAfter}));
}

TEST(Trace, IterdemoEndToEnd) {
  vm::Program p = vm::ParseProgram(testing::ReadFixture("iterdemo.svm"));
  automata::Property prop =
      automata::ParseProperty(testing::ReadFixture("unsafe_iterator.prop"));
  vm::Program woven = stdlib::InstrumentEvents(p, prop, false).program;
  stdlib::MonitoredRun ok = stdlib::RunMonitored(woven, std::vector<Value>{Value::Int(0)}, prop);
  stdlib::MonitoredRun bad = stdlib::RunMonitored(woven, std::vector<Value>{Value::Int(1)}, prop);
  EXPECT_EQ(ok.verdict, Verdict::kUnknown);
  EXPECT_EQ(bad.verdict, Verdict::kViolation);
  ASSERT_FALSE(bad.trace.empty());
  EXPECT_EQ(bad.trace.front().method, "Demo.main");
  for (const Event& e : bad.trace) {
    EXPECT_EQ(p.Find("Demo.main")->body[static_cast<std::size_t>(e.instruction)].opcode,
              vm::Opcode::kCall);
  }
}

}  // namespace
}  // namespace svmweave::monitor
