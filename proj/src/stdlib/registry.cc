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


#include "svmweave/stdlib/registry.h"

#include <charconv>

#include "svmweave/stdlib/instrumentation.h"
#include "svmweave/stdlib/metrics.h"
#include "svmweave/stdlib/mutators.h"
#include "svmweave/support/error.h"

namespace svmweave::stdlib {

namespace {

void AllowOnly(const std::string& name,
               const std::map<std::string, std::string>& args,
               std::initializer_list<std::string_view> keys) {
  for (const auto& [key, value] : args) {
    bool known = false;
    for (std::string_view k : keys) known = known || k == key;
    if (!known) {
      throw Error("transformer " + name + " has no argument '" + key + "'");
    }
  }
}

MutationTarget Target(const std::string& name,
                      const std::map<std::string, std::string>& args) {
  MutationTarget target;
  auto it = args.find("instruction");
  if (it == args.end()) return target;
  int v = 0;
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw Error("transformer " + name + ": bad instruction index '" + s + "'");
  }
  target.instruction = v;
  return target;
}

const automata::Property& NeedProperty(const std::string& name,
                                       const TransformerOptions& options) {
  if (!options.property) {
    throw Error("transformer " + name + " needs a property file");
  }
  return *options.property;
}

}  // namespace

std::vector<std::string> TransformerNames() {
  return {"logging",        "timer",           "block_printer",
          "event_extraction", "residual_analysis", "mccabe",
          "abc",            "unused_vars",     "call_counter",
          "return_mutator", "decision_mutator", "arithmetic_mutator"};
}

engine::TransformerInstance MakeTransformer(
    const std::string& name, const std::map<std::string, std::string>& args,
    const TransformerOptions& options) {
  engine::TransformerInstance t;
  if (name == "logging") {
    AllowOnly(name, args, {"annotation"});
    auto it = args.find("annotation");
    t = LoggingTransformer(it == args.end() ? "log" : it->second);
  } else if (name == "timer") {
    AllowOnly(name, args, {});
    t = TimerTransformer();
  } else if (name == "block_printer") {
    AllowOnly(name, args, {});
    t = BlockPrinterTransformer();
  } else if (name == "event_extraction") {
    AllowOnly(name, args, {});
    t = EventExtractionTransformer(NeedProperty(name, options).spec);
  } else if (name == "residual_analysis") {
    AllowOnly(name, args, {});
    const automata::Property& p = NeedProperty(name, options);
    t = ResidualAnalysisTransformer(p.spec, p.BadAutomaton());
  } else if (name == "mccabe") {
    AllowOnly(name, args, {});
    t = McCabeTransformer();
  } else if (name == "abc") {
    AllowOnly(name, args, {});
    t = AbcTransformer();
  } else if (name == "unused_vars") {
    AllowOnly(name, args, {});
    t = UnusedVarsTransformer();
  } else if (name == "call_counter") {
    AllowOnly(name, args, {});
    t = CallCounterTransformer();
  } else if (name == "return_mutator") {
    AllowOnly(name, args, {"instruction"});
    t = ReturnMutator(Target(name, args));
  } else if (name == "decision_mutator") {
    AllowOnly(name, args, {"instruction"});
    t = DecisionMutator(Target(name, args));
  } else if (name == "arithmetic_mutator") {
    AllowOnly(name, args, {"instruction", "mode"});
    ArithmeticMode mode = ArithmeticMode::kSwap;
    auto it = args.find("mode");
    if (it != args.end()) {
      if (it->second == "random") {
        mode = ArithmeticMode::kRandom;
      } else if (it->second != "swap") {
        throw Error("arithmetic_mutator: mode must be swap or random");
      }
    }
    t = ArithmeticMutator(mode, options.seed, Target(name, args));
  } else {
    throw Error("unknown transformer '" + name + "'");
  }
  t.args = args;
  return t;
}

}  // namespace svmweave::stdlib
