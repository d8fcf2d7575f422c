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


#ifndef SVMWEAVE_STDLIB_MUTATORS_H_
#define SVMWEAVE_STDLIB_MUTATORS_H_

#include <cstdint>
#include <optional>

#include "svmweave/engine/transformer.h"

namespace svmweave::stdlib {

// Restricts a mutator to one instruction index; all matching ones otherwise.
struct MutationTarget {
  std::optional<int> instruction;
  bool Selects(int index) const { return !instruction || *instruction == index; }
};

// Replaces the returned value by 0: inserts POP, CONST 0 before RETV.
engine::TransformerInstance ReturnMutator(MutationTarget target = {});

// Negates the JZ condition: inserts CONST 0, EQ before JZ.
engine::TransformerInstance DecisionMutator(MutationTarget target = {});

enum class ArithmeticMode { kSwap, kRandom };

// Replaces ADD/SUB/MUL/DIV. kSwap maps ADD<->SUB and MUL<->DIV; kRandom picks
// one of the other three operators with a generator seeded by `seed`.
engine::TransformerInstance ArithmeticMutator(ArithmeticMode mode = ArithmeticMode::kSwap,
                                              std::uint64_t seed = 0,
                                              MutationTarget target = {});

}  // namespace svmweave::stdlib

#endif  // SVMWEAVE_STDLIB_MUTATORS_H_
