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


#include "svmweave/stdlib/instrumentation.h"

#include <memory>
#include <utility>

#include "svmweave/automata/residual.h"
#include "svmweave/monitor/monitor.h"

namespace svmweave::stdlib {

using engine::BasicBlockContext;
using engine::Joinpoint;
using engine::MethodCallContext;
using engine::MethodContext;
using engine::TransformerInstance;
using vm::Value;

namespace {

std::string JoinInts(const std::set<int>& xs) {
  std::string out;
  for (int x : xs) {
    if (!out.empty()) out += ",";
    out += std::to_string(x);
  }
  return out.empty() ? "-" : out;
}

void Emit(const MethodCallContext& call, Joinpoint& jp,
          const automata::EventSpec& spec, automata::EventDirection dir) {
  const automata::EventRule* rule = spec.Match(call.callee());
  if (rule == nullptr || rule->direction != dir) return;
  std::string origin =
      call.method().qualified_name() + "@" + std::to_string(call.index());
  jp.Invoke(std::string(monitor::kEmitExtern),
            {Value::Str(rule->symbol), Value::Str(origin),
             Value::Str(dir == automata::EventDirection::kBefore ? "before"
                                                                 : "after")});
}

}  // namespace

TransformerInstance LoggingTransformer(std::string annotation) {
  TransformerInstance t;
  t.name = "logging";
  t.on_method_enter = [annotation](const MethodContext& m, Joinpoint& jp) {
    if (!m.IsAnnotated(annotation)) return;
    jp.Print({Value::Str("Entering method: "), Value::Str(m.qualified_name())});
  };
  t.on_method_exit = [annotation](const MethodContext& m, Joinpoint& jp) {
    if (!m.IsAnnotated(annotation)) return;
    jp.Print({Value::Str("Exiting method: "), Value::Str(m.qualified_name())});
  };
  return t;
}

TransformerInstance TimerTransformer() {
  TransformerInstance t;
  t.name = "timer";
  t.on_method_enter = [](const MethodContext& m, Joinpoint& jp) {
    jp.Invoke("Timer.start", {Value::Str(m.qualified_name())});
  };
  t.on_method_exit = [](const MethodContext& m, Joinpoint& jp) {
    jp.Invoke("Timer.stop", {Value::Str(m.qualified_name())});
  };
  return t;
}

TransformerInstance BlockPrinterTransformer() {
  TransformerInstance t;
  t.name = "block_printer";
  t.on_basic_block_enter = [](const BasicBlockContext& b, Joinpoint& jp) {
    jp.Print({Value::Str("block "), Value::Str(b.method().qualified_name()),
              Value::Str(" B"), Value::Int(b.id())});
  };
  return t;
}

TransformerInstance EventExtractionTransformer(automata::EventSpec spec) {
  auto shared = std::make_shared<const automata::EventSpec>(std::move(spec));
  TransformerInstance t;
  t.name = "event_extraction";
  t.before_method_call = [shared](const MethodCallContext& c, Joinpoint& jp) {
    Emit(c, jp, *shared, automata::EventDirection::kBefore);
  };
  t.after_method_call = [shared](const MethodCallContext& c, Joinpoint& jp) {
    Emit(c, jp, *shared, automata::EventDirection::kAfter);
  };
  return t;
}

TransformerInstance ResidualAnalysisTransformer(automata::EventSpec spec,
                                                automata::Nfa bad) {
  auto shared_spec = std::make_shared<const automata::EventSpec>(std::move(spec));
  auto shared_bad = std::make_shared<const automata::Nfa>(std::move(bad));
  TransformerInstance t;
  t.name = "residual_analysis";
  t.hidden = true;
  t.on_method_enter = [shared_spec, shared_bad](const MethodContext& m,
                                                Joinpoint& jp) {
    automata::ResidualPlan plan = automata::ComputeResidualPlan(
        m.program(), m.method(), *shared_spec, *shared_bad);
    for (int i : plan.hide) jp.Hide(i);
    jp.Report("residual method=" + m.qualified_name() +
              " eligible=" + (plan.eligible ? "yes" : "no") +
              " keep=" + JoinInts(plan.keep) + " hide=" + JoinInts(plan.hide));
  };
  return t;
}

}  // namespace svmweave::stdlib
