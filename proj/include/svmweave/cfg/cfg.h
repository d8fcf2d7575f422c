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


#ifndef SVMWEAVE_CFG_CFG_H_
#define SVMWEAVE_CFG_CFG_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svmweave/vm/program.h"

namespace svmweave::cfg {

enum class BlockType { kEntry, kExit, kCondJump, kNormal };
enum class EdgeLabel { kTrue, kFalse, kUncond };

std::string_view BlockTypeName(BlockType type);
std::string_view EdgeLabelName(EdgeLabel label);

struct BasicBlock {
  int id = 0;
  // Instruction range [begin, end) of the method body. Empty for blocks
  // inserted by SplitCriticalEdges.
  std::size_t begin = 0;
  std::size_t end = 0;
  BlockType type = BlockType::kNormal;
  bool entry = false;
  bool exit = false;
  bool synthetic = false;

  bool empty() const { return begin == end; }
  std::size_t size() const { return end - begin; }
  bool Contains(std::size_t index) const {
    return index >= begin && index < end;
  }

  bool operator==(const BasicBlock&) const = default;
};

struct Edge {
  int from = 0;
  int to = 0;
  EdgeLabel label = EdgeLabel::kUncond;

  bool operator==(const Edge&) const = default;
};

// Control-flow graph of one method. Block ids equal their position in
// blocks(). Holds a pointer to the method; the method must outlive the Cfg.
class Cfg {
 public:
  Cfg() = default;
  Cfg(const vm::Method* method, std::vector<BasicBlock> blocks,
      std::vector<Edge> edges);

  const vm::Method& method() const { return *method_; }
  const std::vector<BasicBlock>& blocks() const { return blocks_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const BasicBlock& block(int id) const { return blocks_.at(id); }

  // Distinct neighbours in edge order.
  std::vector<int> Successors(int id) const;
  std::vector<int> Predecessors(int id) const;
  // Edge counts, counting parallel edges separately.
  int OutDegree(int id) const;
  int InDegree(int id) const;
  // Defined only for CONDJUMP blocks.
  std::optional<int> TrueBranch(int id) const;
  std::optional<int> FalseBranch(int id) const;
  int EntryBlock() const;
  std::vector<int> ExitBlocks() const;
  // Block holding instruction `index`; absent for out-of-range indices.
  std::optional<int> BlockOf(std::size_t index) const;
  // Edges from a multi-successor block to a multi-predecessor block.
  std::vector<Edge> CriticalEdges() const;

 private:
  const vm::Method* method_ = nullptr;
  std::vector<BasicBlock> blocks_;
  std::vector<Edge> edges_;
};

// Leaders are the method start, every jump target, and every instruction
// following a JMP/JZ/RET/RETV/HALT. The JZ fall-through edge is TRUE, the
// jump edge FALSE. Throws Error on extern methods.
Cfg BuildCfg(const vm::Method& method);

// Replaces every critical edge (a, b) with a -> s -> b through a fresh empty
// block s, keeping the original edge label on a -> s. New blocks get ids
// after the existing ones. Idempotent.
Cfg SplitCriticalEdges(const Cfg& g);

// Graphviz rendering: one box per block listing its mnemonics, edges
// labelled TRUE/FALSE/UNCOND.
std::string EmitDot(const Cfg& g);

// "<owner>.<method>.dot", or with ".instr.dot" for the woven variant.
std::string DotFileName(const vm::Method& method, bool instrumented);

}  // namespace svmweave::cfg

#endif  // SVMWEAVE_CFG_CFG_H_
