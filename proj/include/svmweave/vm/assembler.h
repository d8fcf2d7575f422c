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

#ifndef SVMWEAVE_VM_ASSEMBLER_H_
#define SVMWEAVE_VM_ASSEMBLER_H_

#include <string>
#include <string_view>

#include "svmweave/vm/program.h"

namespace svmweave::vm {

// Parses SVM assembly:
//
//   ; comment
//   entry Owner.name                       (optional, default: first func)
//   extern Owner.name(nargs) [returns]
//   func Owner.name(nargs,nlocals) [@anno]*:
//     label:
//     opcode operands                      ;#syn ;#hid
//
// Labels are local to their function and resolved to instruction indices.
// Trailing `;#syn` / `;#hid` markers restore the synthetic / hidden flags.
// The result is validated; throws ParseError or ValidationError.
Program ParseProgram(std::string_view source);

// Inverse of ParseProgram. Jump targets become labels named `L<index>`.
std::string SerializeProgram(const Program& program);

// One instruction in assembly syntax, with `L<index>` for jump targets and
// without flag markers.
std::string FormatInstruction(const Instruction& ins);

}  // namespace svmweave::vm

#endif  // SVMWEAVE_VM_ASSEMBLER_H_
