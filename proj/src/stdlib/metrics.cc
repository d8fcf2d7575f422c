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


#include "svmweave/stdlib/metrics.h"

#include <cmath>
#include <memory>
#include <sstream>

#include "svmweave/cfg/cfg.h"

namespace svmweave::stdlib {

using engine::BasicBlockContext;
using engine::InstructionContext;
using engine::Joinpoint;
using engine::MethodContext;
using engine::TransformerInstance;
using vm::Opcode;

void MetricsAccumulator::Reset(int nlocals) {
  *this = MetricsAccumulator();
  unused.assign(static_cast<std::size_t>(nlocals), true);
}

double MetricsAccumulator::Abc() const {
  return std::sqrt(static_cast<double>(a * a + b * b + c * c));
}

int MetricsAccumulator::UnusedVars() const {
  int n = 0;
  for (bool u : unused) n += u ? 1 : 0;
  return n;
}

namespace {

// Feeds one instruction into the A/B and unused-variable counters.
void Count(MetricsAccumulator& acc, const vm::Instruction& ins) {
  switch (ins.opcode) {
    case Opcode::kStore:
      ++acc.a;
      break;
    case Opcode::kCall:
    case Opcode::kJmp:
    case Opcode::kJz:
      ++acc.b;
      break;
    case Opcode::kLoad:
      if (ins.operand >= 0 &&
          static_cast<std::size_t>(ins.operand) < acc.unused.size()) {
        acc.unused[static_cast<std::size_t>(ins.operand)] = false;
      }
      break;
    default:
      break;
  }
}

MetricsAccumulator Accumulate(const vm::Method& m) {
  MetricsAccumulator acc;
  acc.Reset(m.nlocals);
  cfg::Cfg g = cfg::BuildCfg(m);
  acc.block_count = static_cast<int>(g.blocks().size());
  acc.edge_number = static_cast<int>(g.edges().size());
  for (const cfg::BasicBlock& b : g.blocks()) {
    if (b.type == cfg::BlockType::kCondJump) ++acc.c;
  }
  for (const vm::Instruction& ins : m.body) Count(acc, ins);
  return acc;
}

// Shares one accumulator between the callbacks of a transformer. Methods are
// woven one at a time, and the accumulator is reset on every method enter.
struct MetricsHooks {
  std::shared_ptr<MetricsAccumulator> acc =
      std::make_shared<MetricsAccumulator>();

  void Install(TransformerInstance& t) {
    auto a = acc;
    t.on_method_enter = [a](const MethodContext& m, Joinpoint&) {
      a->Reset(m.nlocals());
    };
    t.on_basic_block_enter = [a](const BasicBlockContext& b, Joinpoint&) {
      ++a->block_count;
      a->edge_number += static_cast<int>(b.Successors().size());
      if (b.type() == cfg::BlockType::kCondJump) ++a->c;
    };
    t.before_instruction = [a](const InstructionContext& i, Joinpoint&) {
      Count(*a, i.instruction());
    };
  }
};

TransformerInstance MetricTransformer(
    std::string name,
    std::function<std::string(const MetricsAccumulator&)> value) {
  TransformerInstance t;
  t.name = name;
  MetricsHooks hooks;
  hooks.Install(t);
  auto acc = hooks.acc;
  t.on_method_exit = [acc, name, value](const MethodContext& m, Joinpoint& jp) {
    jp.Report(MetricLine(name, m.qualified_name(), value(*acc)));
  };
  return t;
}

}  // namespace

int McCabe(const vm::Method& m) { return Accumulate(m).McCabe(); }

double Abc(const vm::Method& m) { return Accumulate(m).Abc(); }

int UnusedVars(const vm::Method& m) { return Accumulate(m).UnusedVars(); }

int CallCount(const vm::Method& m) {
  int n = 0;
  for (const vm::Instruction& ins : m.body) {
    if (ins.opcode == Opcode::kCall) ++n;
  }
  return n;
}

std::string MetricLine(const std::string& name, const std::string& method,
                       const std::string& value) {
  return "metric=" + name + " method=" + method + " value=" + value;
}

std::string FormatMetric(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

TransformerInstance McCabeTransformer() {
  return MetricTransformer("mccabe", [](const MetricsAccumulator& a) {
    return std::to_string(a.McCabe());
  });
}

TransformerInstance AbcTransformer() {
  return MetricTransformer("abc", [](const MetricsAccumulator& a) {
    return FormatMetric(a.Abc());
  });
}

TransformerInstance UnusedVarsTransformer() {
  return MetricTransformer("unused_vars", [](const MetricsAccumulator& a) {
    return std::to_string(a.UnusedVars());
  });
}

TransformerInstance CallCounterTransformer() {
  auto calls = std::make_shared<int>(0);
  TransformerInstance t = MetricTransformer(
      "calls", [calls](const MetricsAccumulator&) {
        return std::to_string(*calls);
      });
  auto enter = t.on_method_enter;
  t.on_method_enter = [calls, enter](const MethodContext& m, Joinpoint& jp) {
    *calls = 0;
    enter(m, jp);
  };
  t.before_method_call = [calls](const engine::MethodCallContext&, Joinpoint&) {
    ++*calls;
  };
  return t;
}

}  // namespace svmweave::stdlib
