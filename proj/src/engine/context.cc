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


#include "svmweave/engine/context.h"

#include "svmweave/shadows/shadows.h"

namespace svmweave::engine {

std::vector<int> BasicBlockContext::Instructions() const {
  return shadows::VisibleInstructions(method_->cfg(), id_);
}

std::optional<int> BasicBlockContext::FirstInstruction() const {
  std::vector<int> v = Instructions();
  if (v.empty()) return std::nullopt;
  return v.front();
}

std::optional<int> BasicBlockContext::LastInstruction() const {
  std::vector<int> v = Instructions();
  if (v.empty()) return std::nullopt;
  return v.back();
}

std::optional<int> InstructionContext::Next() const {
  const auto& body = method().method().body;
  for (std::size_t i = static_cast<std::size_t>(index_) + 1; i < body.size();
       ++i) {
    if (!body[i].hidden) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> InstructionContext::Previous() const {
  const auto& body = method().method().body;
  for (int i = index_ - 1; i >= 0; --i) {
    if (!body[static_cast<std::size_t>(i)].hidden) return i;
  }
  return std::nullopt;
}

std::string MethodCallContext::method_name() const {
  return vm::SplitQualifiedName(callee()).second;
}

std::string MethodCallContext::method_owner() const {
  return vm::SplitQualifiedName(callee()).first;
}

bool MethodCallContext::returns() const {
  const vm::Method* m = callee_method();
  return m != nullptr && vm::CalleeReturns(*m);
}

}  // namespace svmweave::engine
