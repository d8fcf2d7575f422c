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


#include "svmweave/stdlib/mutators.h"

#include <array>
#include <memory>
#include <random>

namespace svmweave::stdlib {

using engine::InstructionContext;
using engine::Joinpoint;
using engine::TransformerInstance;
using vm::Instruction;
using vm::Opcode;

namespace {

constexpr std::array<Opcode, 4> kBinaryOps = {Opcode::kAdd, Opcode::kSub,
                                              Opcode::kMul, Opcode::kDiv};

bool IsBinaryArith(Opcode op) {
  for (Opcode o : kBinaryOps) {
    if (o == op) return true;
  }
  return false;
}

Opcode Swap(Opcode op) {
  switch (op) {
    case Opcode::kAdd:
      return Opcode::kSub;
    case Opcode::kSub:
      return Opcode::kAdd;
    case Opcode::kMul:
      return Opcode::kDiv;
    default:
      return Opcode::kMul;
  }
}

}  // namespace

TransformerInstance ReturnMutator(MutationTarget target) {
  TransformerInstance t;
  t.name = "return_mutator";
  t.before_instruction = [target](const InstructionContext& i, Joinpoint& jp) {
    if (i.opcode() != Opcode::kRetv || !target.Selects(i.index())) return;
    jp.Insert({Instruction::Op(Opcode::kPop), Instruction::Const(0)});
  };
  return t;
}

TransformerInstance DecisionMutator(MutationTarget target) {
  TransformerInstance t;
  t.name = "decision_mutator";
  t.before_instruction = [target](const InstructionContext& i, Joinpoint& jp) {
    if (i.opcode() != Opcode::kJz || !target.Selects(i.index())) return;
    // x -> (x == 0): JZ now jumps exactly when it used to fall through.
    jp.Insert({Instruction::Const(0), Instruction::Op(Opcode::kEq)});
  };
  return t;
}

TransformerInstance ArithmeticMutator(ArithmeticMode mode, std::uint64_t seed,
                                      MutationTarget target) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  TransformerInstance t;
  t.name = "arithmetic_mutator";
  t.before_instruction = [mode, rng, target](const InstructionContext& i,
                                             Joinpoint& jp) {
    if (!IsBinaryArith(i.opcode()) || !target.Selects(i.index())) return;
    Opcode replacement = Swap(i.opcode());
    if (mode == ArithmeticMode::kRandom) {
      std::uniform_int_distribution<int> pick(0, 2);
      int k = pick(*rng);
      for (Opcode o : kBinaryOps) {
        if (o == i.opcode()) continue;
        if (k-- == 0) {
          replacement = o;
          break;
        }
      }
    }
    jp.Remove();
    jp.Insert({Instruction::Op(replacement)});
  };
  return t;
}

}  // namespace svmweave::stdlib
