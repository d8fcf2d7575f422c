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


#ifndef SVMWEAVE_ENGINE_CONTEXT_H_
#define SVMWEAVE_ENGINE_CONTEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svmweave/cfg/cfg.h"
#include "svmweave/vm/program.h"

namespace svmweave::engine {

// Static context views handed to locator callbacks. They are only valid for
// the duration of the callback.

class ClassContext {
 public:
  ClassContext(std::string name, std::vector<std::string> methods)
      : name_(std::move(name)), methods_(std::move(methods)) {}

  const std::string& name() const { return name_; }
  // Qualified names of the methods of the class that are in scope.
  const std::vector<std::string>& methods() const { return methods_; }

 private:
  std::string name_;
  std::vector<std::string> methods_;
};

class MethodContext {
 public:
  MethodContext(const vm::Program* program, const vm::Method* method,
                const cfg::Cfg* original, const cfg::Cfg* split,
                const ClassContext* klass)
      : program_(program),
        method_(method),
        original_(original),
        split_(split),
        klass_(klass) {}

  const vm::Program& program() const { return *program_; }
  const vm::Method& method() const { return *method_; }
  const std::string& name() const { return method_->name; }
  const std::string& owner() const { return method_->owner; }
  std::string qualified_name() const { return method_->QualifiedName(); }
  int nargs() const { return method_->nargs; }
  int nlocals() const { return method_->nlocals; }
  bool IsAnnotated(std::string_view annotation) const {
    return method_->IsAnnotated(annotation);
  }
  // Graph with critical edges split; block ids seen by callbacks refer to it.
  const cfg::Cfg& cfg() const { return *split_; }
  // Graph before critical-edge splitting.
  const cfg::Cfg& original_cfg() const { return *original_; }
  int EntryBlock() const { return split_->EntryBlock(); }
  std::vector<int> ExitBlocks() const { return split_->ExitBlocks(); }
  const ClassContext& klass() const { return *klass_; }

 private:
  const vm::Program* program_;
  const vm::Method* method_;
  const cfg::Cfg* original_;
  const cfg::Cfg* split_;
  const ClassContext* klass_;
};

class BasicBlockContext {
 public:
  BasicBlockContext(const MethodContext* method, int id)
      : method_(method), id_(id) {}

  int id() const { return id_; }
  const cfg::BasicBlock& block() const { return method_->cfg().block(id_); }
  cfg::BlockType type() const { return block().type; }
  bool IsEntry() const { return block().entry; }
  bool IsExit() const { return block().exit; }
  // Empty block inserted on a critical edge.
  bool IsSynthetic() const { return block().synthetic; }
  std::vector<int> Successors() const { return method_->cfg().Successors(id_); }
  std::vector<int> Predecessors() const {
    return method_->cfg().Predecessors(id_);
  }
  std::optional<int> TrueBranch() const {
    return method_->cfg().TrueBranch(id_);
  }
  std::optional<int> FalseBranch() const {
    return method_->cfg().FalseBranch(id_);
  }
  // Visible instruction indices.
  std::vector<int> Instructions() const;
  std::optional<int> FirstInstruction() const;
  std::optional<int> LastInstruction() const;
  const MethodContext& method() const { return *method_; }

 private:
  const MethodContext* method_;
  int id_;
};

class InstructionContext {
 public:
  InstructionContext(const BasicBlockContext* block, int index)
      : block_(block), index_(index) {}

  int index() const { return index_; }
  const vm::Instruction& instruction() const {
    return method().method().body[static_cast<std::size_t>(index_)];
  }
  vm::Opcode opcode() const { return instruction().opcode; }
  // Neighbouring visible instructions in method order.
  std::optional<int> Next() const;
  std::optional<int> Previous() const;
  bool IsBranching() const { return vm::IsJump(opcode()); }
  bool IsConditionalJump() const { return opcode() == vm::Opcode::kJz; }
  bool IsReturn() const { return vm::IsReturn(opcode()); }
  bool IsCall() const { return opcode() == vm::Opcode::kCall; }
  const BasicBlockContext& block() const { return *block_; }
  const MethodContext& method() const { return block_->method(); }

 private:
  const BasicBlockContext* block_;
  int index_;
};

class MethodCallContext : public InstructionContext {
 public:
  using InstructionContext::InstructionContext;

  // Qualified callee name, e.g. "List.add".
  const std::string& callee() const { return instruction().text; }
  std::string method_name() const;
  std::string method_owner() const;
  int nargs() const { return static_cast<int>(instruction().operand); }
  const vm::Method* callee_method() const {
    return method().program().Find(callee());
  }
  // Whether the call leaves a result on the stack.
  bool returns() const;
};

}  // namespace svmweave::engine

#endif  // SVMWEAVE_ENGINE_CONTEXT_H_
