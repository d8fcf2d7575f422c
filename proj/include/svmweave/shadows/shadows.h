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


#ifndef SVMWEAVE_SHADOWS_SHADOWS_H_
#define SVMWEAVE_SHADOWS_SHADOWS_H_

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svmweave/cfg/cfg.h"

namespace svmweave::shadows {

enum class Direction { kBefore, kAfter, kEnter, kExit };
enum class ElementKind { kInstruction, kBlock, kMethod };

// A weavable region: before/after an instruction or enter/exit of a block
// or the method. `element` is the instruction index or block id; 0 for the
// method.
struct Shadow {
  Direction direction = Direction::kBefore;
  ElementKind kind = ElementKind::kInstruction;
  int element = 0;

  static Shadow Before(int instr) {
    return {Direction::kBefore, ElementKind::kInstruction, instr};
  }
  static Shadow After(int instr) {
    return {Direction::kAfter, ElementKind::kInstruction, instr};
  }
  static Shadow BlockEnter(int block) {
    return {Direction::kEnter, ElementKind::kBlock, block};
  }
  static Shadow BlockExit(int block) {
    return {Direction::kExit, ElementKind::kBlock, block};
  }
  static Shadow MethodEnter() {
    return {Direction::kEnter, ElementKind::kMethod, 0};
  }
  static Shadow MethodExit() {
    return {Direction::kExit, ElementKind::kMethod, 0};
  }

  // e.g. "<before,i3>", "<exit,b2>", "<enter,m>"
  std::string ToString() const;

  auto operator<=>(const Shadow&) const = default;
};

enum class LocatorKind {
  kBeforeInstruction,
  kAfterInstruction,
  kBeforeMethodCall,
  kAfterMethodCall,
  kOnBasicBlockEnter,
  kOnBasicBlockExit,
  kOnTrueBranchEnter,
  kOnFalseBranchEnter,
  kOnMethodEnter,
  kOnMethodExit,
  kOnClassEnter,
  kOnClassExit,
};

inline constexpr int kLocatorKindCount = 12;

std::string_view LocatorName(LocatorKind kind);

// Indices of the non-hidden instructions of `block`, in order.
std::vector<int> VisibleInstructions(const cfg::Cfg& g, int block);

// Every shadow of the method: before/after each visible instruction,
// enter/exit of each block, enter/exit of the method. Sorted.
std::vector<Shadow> EnumerateShadows(const cfg::Cfg& g);

bool InMethod(const Shadow& s, const cfg::Cfg& g);

// The generating pairs of the equivalence, lines (1)-(5): method enter with
// the entry block, method exit with every exit block, block enter with its
// first visible instruction, block exit with its last visible instruction,
// and consecutive visible instructions of one block.
std::vector<std::pair<Shadow, Shadow>> EquivalenceGenerators(
    const cfg::Cfg& g);

// Equivalence classes of the closure of EquivalenceGenerators().
class ShadowPartition {
 public:
  ShadowPartition() = default;
  explicit ShadowPartition(const cfg::Cfg& g);

  // Classes sorted internally and ordered by their smallest member.
  const std::vector<std::vector<Shadow>>& classes() const { return classes_; }
  // Throws Error when `s` is not a shadow of the method.
  int ClassOf(const Shadow& s) const;
  bool Equivalent(const Shadow& a, const Shadow& b) const;

 private:
  std::vector<std::vector<Shadow>> classes_;
  std::map<Shadow, int> class_of_;
};

ShadowPartition EquivalenceClasses(const cfg::Cfg& g);

// Throws Error when either shadow is not in the method.
bool ShadowEquiv(const Shadow& a, const Shadow& b, const cfg::Cfg& g);

// Shadows matched by a locator. Branch locators should be given the
// critical-edge-split graph. Class locators match nothing.
std::vector<Shadow> MatchLocator(LocatorKind kind, const cfg::Cfg& g);

}  // namespace svmweave::shadows

#endif  // SVMWEAVE_SHADOWS_SHADOWS_H_
