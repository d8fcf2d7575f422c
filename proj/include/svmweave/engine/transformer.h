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


#ifndef SVMWEAVE_ENGINE_TRANSFORMER_H_
#define SVMWEAVE_ENGINE_TRANSFORMER_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "svmweave/engine/context.h"
#include "svmweave/shadows/shadows.h"
#include "svmweave/vm/program.h"

namespace svmweave::engine {

enum class ValueType { kInt, kStr, kUnknown };

// A runtime value reachable from the weave point.
struct DynamicValue {
  enum class Source {
    kLocalSlot,
    kStackValue,
    kMethodArg,
    kMethodResult,
    kSyntheticLocal,
  };

  Source source = Source::kLocalSlot;
  // Slot, stack depth (0 = top) or argument index.
  int index = 0;
  ValueType type = ValueType::kUnknown;

  static DynamicValue LocalSlot(int slot) {
    return {Source::kLocalSlot, slot};
  }
  static DynamicValue StackValue(int depth) {
    return {Source::kStackValue, depth};
  }
  static DynamicValue MethodArg(int k) { return {Source::kMethodArg, k}; }
  static DynamicValue MethodResult() { return {Source::kMethodResult, 0}; }
  static DynamicValue SyntheticLocal(int slot) {
    return {Source::kSyntheticLocal, slot};
  }

  std::string ToString() const;
  bool operator==(const DynamicValue&) const = default;
};

// Literal or dynamic argument of an advice directive.
using Param = std::variant<vm::Value, DynamicValue>;

struct Directive {
  enum class Kind { kPrint, kInvoke, kInsertRaw, kRemove };

  Kind kind = Kind::kPrint;
  std::vector<Param> params;
  std::string callee;
  // Jump operands inside raw code are relative to the snippet start; the
  // snippet length denotes "fall out of the snippet".
  std::vector<vm::Instruction> raw;
};

struct Advice {
  std::vector<Directive> directives;
  bool empty() const { return directives.empty(); }
};

class WeaveSession;

// Handle passed to locator callbacks. Buffers the advice of one callback
// invocation; the weaver compiles and inlines it when the callback returns.
class Joinpoint {
 public:
  Joinpoint(WeaveSession* session, std::optional<shadows::Shadow> shadow,
            shadows::LocatorKind locator)
      : session_(session), shadow_(shadow), locator_(locator) {}

  // Absent for class-level callbacks.
  const std::optional<shadows::Shadow>& shadow() const { return shadow_; }
  shadows::LocatorKind locator() const { return locator_; }

  // Prints the concatenation of the parts as one line (at most 8 parts).
  void Print(std::vector<Param> parts);
  // Calls an extern, declaring it (without result) when unknown.
  void Invoke(std::string callee, std::vector<Param> params = {});
  void Insert(std::vector<vm::Instruction> code);
  // Removes the instruction of the current instruction shadow.
  void Remove();

  // Marks an instruction of the current method hidden for every later
  // transformer. Takes effect once the method has been woven.
  void Hide(int instruction);
  // Fresh local slot of the current method.
  int AddSyntheticLocal();
  // Appends a line to the weave output (metrics and analysis results).
  void Report(std::string line);

  const Advice& advice() const { return advice_; }

 private:
  WeaveSession* session_;
  std::optional<shadows::Shadow> shadow_;
  shadows::LocatorKind locator_;
  Advice advice_;
};

template <typename Context>
using Callback = std::function<void(const Context&, Joinpoint&)>;

struct TransformerInstance {
  std::string name;
  // Advice of a hidden transformer is invisible to later transformers.
  bool hidden = false;
  std::map<std::string, std::string> args;

  Callback<InstructionContext> before_instruction;
  Callback<InstructionContext> after_instruction;
  Callback<MethodCallContext> before_method_call;
  Callback<MethodCallContext> after_method_call;
  Callback<BasicBlockContext> on_basic_block_enter;
  Callback<BasicBlockContext> on_basic_block_exit;
  Callback<BasicBlockContext> on_true_branch_enter;
  Callback<BasicBlockContext> on_false_branch_enter;
  Callback<MethodContext> on_method_enter;
  Callback<MethodContext> on_method_exit;
  Callback<ClassContext> on_class_enter;
  Callback<ClassContext> on_class_exit;

  bool HasCallback() const;
};

}  // namespace svmweave::engine

#endif  // SVMWEAVE_ENGINE_TRANSFORMER_H_
