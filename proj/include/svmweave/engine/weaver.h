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


#ifndef SVMWEAVE_ENGINE_WEAVER_H_
#define SVMWEAVE_ENGINE_WEAVER_H_

#include <optional>
#include <string>
#include <vector>

#include "svmweave/engine/config.h"
#include "svmweave/engine/transformer.h"
#include "svmweave/shadows/shadows.h"
#include "svmweave/vm/program.h"

namespace svmweave::engine {

// A shadow where a transformer inserted advice (or removed an instruction).
struct UsedShadow {
  // Shadow in the method version the transformer saw.
  shadows::Shadow shadow;
  // Region in terms of the input method, e.g. "<before,i4>".
  std::string region;
  // Identifies the equivalence class of the region in the input method;
  // equal keys mean equivalent shadows.
  std::string class_key;
};

struct MethodWeave {
  std::string transformer;
  // Position of the transformer in the applied list.
  int application = 0;
  std::string method;
  std::vector<UsedShadow> used;
  int inserted = 0;
  int removed = 0;
  int hidden = 0;
};

struct WeaveReport {
  std::vector<MethodWeave> entries;
  // Lines emitted through Joinpoint::Report, in order.
  std::vector<std::string> lines;

  int TotalSites() const;
  int TotalHidden() const;
};

struct Collision {
  std::string method;
  std::string transformer;        // earlier application
  std::string other_transformer;  // later application
  int application = 0;
  int other_application = 0;
  std::string region;
  std::string other_region;

  bool operator==(const Collision&) const = default;
};

struct CollisionReport {
  std::vector<Collision> collisions;
  bool empty() const { return collisions.empty(); }
};

struct WeaveResult {
  vm::Program program;
  WeaveReport report;
  CollisionReport collisions;
};

struct WeaveOptions {
  ScopePattern scope;
};

// Applies the transformers in order. Each transformer sees the program as
// woven by its predecessors. Throws WeaveError naming the transformer and
// shadow when advice cannot be compiled or the woven method is invalid.
WeaveResult ApplyTransformers(const vm::Program& program,
                              const std::vector<TransformerInstance>& ts,
                              const WeaveOptions& options = {});

// Pairs of distinct applications that used equivalent shadows in the same
// method; one entry per unordered pair and method.
CollisionReport DetectCollisions(const WeaveReport& report);

// The shadow, instruction and callee a dynamic value is resolved against.
struct WeaveSite {
  shadows::Shadow shadow;
  shadows::LocatorKind locator = shadows::LocatorKind::kBeforeInstruction;
  // Instruction of an instruction shadow.
  const vm::Instruction* instruction = nullptr;
};

// Code that pushes `dv` and leaves the rest of the stack as it was:
// `prologue` runs before the push, `epilogue` restores spilled values after
// the consumer of the value has run. Adds synthetic locals to `method` when
// spilling. Throws WeaveError when `dv` is not available at the site.
struct ResolvedValue {
  std::vector<vm::Instruction> prologue;
  std::vector<vm::Instruction> load;
  std::vector<vm::Instruction> epilogue;
};
ResolvedValue ResolveDynamic(const DynamicValue& dv, const WeaveSite& site,
                             const vm::Program& program, vm::Method& method);

// Returns a fresh slot (the previous local count) and grows the frame.
int AddSyntheticLocal(vm::Method& method);

void HideInstruction(vm::Instruction& ins);

}  // namespace svmweave::engine

#endif  // SVMWEAVE_ENGINE_WEAVER_H_
