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


#include "svmweave/shadows/shadows.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "svmweave/support/error.h"

namespace svmweave::shadows {

namespace {

std::string_view DirectionName(Direction d) {
  switch (d) {
    case Direction::kBefore:
      return "before";
    case Direction::kAfter:
      return "after";
    case Direction::kEnter:
      return "enter";
    case Direction::kExit:
      return "exit";
  }
  return "?";
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Unite(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::string Shadow::ToString() const {
  std::string out = "<";
  out += DirectionName(direction);
  out += ",";
  switch (kind) {
    case ElementKind::kInstruction:
      out += "i" + std::to_string(element);
      break;
    case ElementKind::kBlock:
      out += "b" + std::to_string(element);
      break;
    case ElementKind::kMethod:
      out += "m";
      break;
  }
  return out + ">";
}

std::string_view LocatorName(LocatorKind kind) {
  switch (kind) {
    case LocatorKind::kBeforeInstruction:
      return "BeforeInstruction";
    case LocatorKind::kAfterInstruction:
      return "AfterInstruction";
    case LocatorKind::kBeforeMethodCall:
      return "BeforeMethodCall";
    case LocatorKind::kAfterMethodCall:
      return "AfterMethodCall";
    case LocatorKind::kOnBasicBlockEnter:
      return "OnBasicBlockEnter";
    case LocatorKind::kOnBasicBlockExit:
      return "OnBasicBlockExit";
    case LocatorKind::kOnTrueBranchEnter:
      return "OnTrueBranchEnter";
    case LocatorKind::kOnFalseBranchEnter:
      return "OnFalseBranchEnter";
    case LocatorKind::kOnMethodEnter:
      return "OnMethodEnter";
    case LocatorKind::kOnMethodExit:
      return "OnMethodExit";
    case LocatorKind::kOnClassEnter:
      return "OnClassEnter";
    case LocatorKind::kOnClassExit:
      return "OnClassExit";
  }
  return "?";
}

std::vector<int> VisibleInstructions(const cfg::Cfg& g, int block) {
  const cfg::BasicBlock& b = g.block(block);
  std::vector<int> out;
  for (std::size_t i = b.begin; i < b.end; ++i) {
    if (!g.method().body[i].hidden) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<Shadow> EnumerateShadows(const cfg::Cfg& g) {
  std::vector<Shadow> out;
  const auto& body = g.method().body;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i].hidden) continue;
    out.push_back(Shadow::Before(static_cast<int>(i)));
    out.push_back(Shadow::After(static_cast<int>(i)));
  }
  for (const cfg::BasicBlock& b : g.blocks()) {
    out.push_back(Shadow::BlockEnter(b.id));
    out.push_back(Shadow::BlockExit(b.id));
  }
  out.push_back(Shadow::MethodEnter());
  out.push_back(Shadow::MethodExit());
  std::sort(out.begin(), out.end());
  return out;
}

bool InMethod(const Shadow& s, const cfg::Cfg& g) {
  switch (s.kind) {
    case ElementKind::kInstruction: {
      const auto& body = g.method().body;
      bool dir_ok =
          s.direction == Direction::kBefore || s.direction == Direction::kAfter;
      return dir_ok && s.element >= 0 &&
             static_cast<std::size_t>(s.element) < body.size() &&
             !body[static_cast<std::size_t>(s.element)].hidden;
    }
    case ElementKind::kBlock:
      return (s.direction == Direction::kEnter ||
              s.direction == Direction::kExit) &&
             s.element >= 0 &&
             static_cast<std::size_t>(s.element) < g.blocks().size();
    case ElementKind::kMethod:
      return (s.direction == Direction::kEnter ||
              s.direction == Direction::kExit) &&
             s.element == 0;
  }
  return false;
}

std::vector<std::pair<Shadow, Shadow>> EquivalenceGenerators(
    const cfg::Cfg& g) {
  std::vector<std::pair<Shadow, Shadow>> out;
  out.emplace_back(Shadow::MethodEnter(), Shadow::BlockEnter(g.EntryBlock()));
  for (int b : g.ExitBlocks()) {
    out.emplace_back(Shadow::BlockExit(b), Shadow::MethodExit());
  }
  for (const cfg::BasicBlock& b : g.blocks()) {
    std::vector<int> visible = VisibleInstructions(g, b.id);
    if (visible.empty()) continue;
    out.emplace_back(Shadow::BlockEnter(b.id), Shadow::Before(visible.front()));
    out.emplace_back(Shadow::After(visible.back()), Shadow::BlockExit(b.id));
    for (std::size_t k = 0; k + 1 < visible.size(); ++k) {
      out.emplace_back(Shadow::After(visible[k]),
                       Shadow::Before(visible[k + 1]));
    }
  }
  return out;
}

ShadowPartition::ShadowPartition(const cfg::Cfg& g) {
  std::vector<Shadow> all = EnumerateShadows(g);
  std::map<Shadow, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;
  UnionFind uf(all.size());
  for (const auto& [a, b] : EquivalenceGenerators(g)) {
    uf.Unite(index.at(a), index.at(b));
  }
  // `all` is sorted and roots are the smallest member, so classes come out
  // ordered by their smallest shadow.
  std::map<std::size_t, int> class_of_root;
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::size_t root = uf.Find(i);
    auto [it, inserted] =
        class_of_root.emplace(root, static_cast<int>(classes_.size()));
    if (inserted) classes_.emplace_back();
    classes_[static_cast<std::size_t>(it->second)].push_back(all[i]);
    class_of_[all[i]] = it->second;
  }
}

int ShadowPartition::ClassOf(const Shadow& s) const {
  auto it = class_of_.find(s);
  if (it == class_of_.end()) {
    throw Error("shadow " + s.ToString() + " is not in the method");
  }
  return it->second;
}

bool ShadowPartition::Equivalent(const Shadow& a, const Shadow& b) const {
  return ClassOf(a) == ClassOf(b);
}

ShadowPartition EquivalenceClasses(const cfg::Cfg& g) {
  return ShadowPartition(g);
}

bool ShadowEquiv(const Shadow& a, const Shadow& b, const cfg::Cfg& g) {
  return ShadowPartition(g).Equivalent(a, b);
}

std::vector<Shadow> MatchLocator(LocatorKind kind, const cfg::Cfg& g) {
  std::set<Shadow> out;
  const auto& body = g.method().body;
  auto each_instruction = [&](bool calls_only, bool before) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i].hidden) continue;
      if (calls_only && body[i].opcode != vm::Opcode::kCall) continue;
      int idx = static_cast<int>(i);
      out.insert(before ? Shadow::Before(idx) : Shadow::After(idx));
    }
  };
  switch (kind) {
    case LocatorKind::kBeforeInstruction:
      each_instruction(false, true);
      break;
    case LocatorKind::kAfterInstruction:
      each_instruction(false, false);
      break;
    case LocatorKind::kBeforeMethodCall:
      each_instruction(true, true);
      break;
    case LocatorKind::kAfterMethodCall:
      each_instruction(true, false);
      break;
    case LocatorKind::kOnBasicBlockEnter:
    case LocatorKind::kOnBasicBlockExit:
      for (const cfg::BasicBlock& b : g.blocks()) {
        out.insert(kind == LocatorKind::kOnBasicBlockEnter
                       ? Shadow::BlockEnter(b.id)
                       : Shadow::BlockExit(b.id));
      }
      break;
    case LocatorKind::kOnTrueBranchEnter:
    case LocatorKind::kOnFalseBranchEnter:
      for (const cfg::BasicBlock& b : g.blocks()) {
        auto succ = kind == LocatorKind::kOnTrueBranchEnter
                        ? g.TrueBranch(b.id)
                        : g.FalseBranch(b.id);
        if (succ) out.insert(Shadow::BlockEnter(*succ));
      }
      break;
    case LocatorKind::kOnMethodEnter:
      out.insert(Shadow::MethodEnter());
      break;
    case LocatorKind::kOnMethodExit:
      out.insert(Shadow::MethodExit());
      break;
    case LocatorKind::kOnClassEnter:
    case LocatorKind::kOnClassExit:
      break;
  }
  return {out.begin(), out.end()};
}

}  // namespace svmweave::shadows
