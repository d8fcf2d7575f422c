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


#include "svmweave/cfg/cfg.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "svmweave/support/error.h"

namespace svmweave::cfg {

using vm::Opcode;

std::string_view BlockTypeName(BlockType type) {
  switch (type) {
    case BlockType::kEntry:
      return "ENTRY";
    case BlockType::kExit:
      return "EXIT";
    case BlockType::kCondJump:
      return "CONDJUMP";
    case BlockType::kNormal:
      return "NORMAL";
  }
  return "?";
}

std::string_view EdgeLabelName(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::kTrue:
      return "TRUE";
    case EdgeLabel::kFalse:
      return "FALSE";
    case EdgeLabel::kUncond:
      return "UNCOND";
  }
  return "?";
}

Cfg::Cfg(const vm::Method* method, std::vector<BasicBlock> blocks,
         std::vector<Edge> edges)
    : method_(method), blocks_(std::move(blocks)), edges_(std::move(edges)) {}

std::vector<int> Cfg::Successors(int id) const {
  std::vector<int> out;
  for (const Edge& e : edges_) {
    if (e.from == id && std::find(out.begin(), out.end(), e.to) == out.end()) {
      out.push_back(e.to);
    }
  }
  return out;
}

std::vector<int> Cfg::Predecessors(int id) const {
  std::vector<int> out;
  for (const Edge& e : edges_) {
    if (e.to == id && std::find(out.begin(), out.end(), e.from) == out.end()) {
      out.push_back(e.from);
    }
  }
  return out;
}

int Cfg::OutDegree(int id) const {
  return static_cast<int>(std::count_if(
      edges_.begin(), edges_.end(), [id](const Edge& e) { return e.from == id; }));
}

int Cfg::InDegree(int id) const {
  return static_cast<int>(std::count_if(
      edges_.begin(), edges_.end(), [id](const Edge& e) { return e.to == id; }));
}

namespace {

std::optional<int> Branch(const Cfg& g, int id, EdgeLabel label) {
  if (g.block(id).type != BlockType::kCondJump) return std::nullopt;
  for (const Edge& e : g.edges()) {
    if (e.from == id && e.label == label) return e.to;
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> Cfg::TrueBranch(int id) const {
  return Branch(*this, id, EdgeLabel::kTrue);
}

std::optional<int> Cfg::FalseBranch(int id) const {
  return Branch(*this, id, EdgeLabel::kFalse);
}

int Cfg::EntryBlock() const {
  for (const BasicBlock& b : blocks_) {
    if (b.entry) return b.id;
  }
  return 0;
}

std::vector<int> Cfg::ExitBlocks() const {
  std::vector<int> out;
  for (const BasicBlock& b : blocks_) {
    if (b.exit) out.push_back(b.id);
  }
  return out;
}

std::optional<int> Cfg::BlockOf(std::size_t index) const {
  for (const BasicBlock& b : blocks_) {
    if (b.Contains(index)) return b.id;
  }
  return std::nullopt;
}

std::vector<Edge> Cfg::CriticalEdges() const {
  std::vector<Edge> out;
  for (const Edge& e : edges_) {
    if (OutDegree(e.from) > 1 && InDegree(e.to) > 1) out.push_back(e);
  }
  return out;
}

Cfg BuildCfg(const vm::Method& method) {
  if (method.is_extern) {
    throw Error("cannot build a CFG for extern " + method.QualifiedName());
  }
  const auto& body = method.body;
  const std::size_t n = body.size();
  std::set<std::size_t> leaders{0};
  for (std::size_t i = 0; i < n; ++i) {
    Opcode op = body[i].opcode;
    if (vm::IsJump(op)) leaders.insert(static_cast<std::size_t>(body[i].operand));
    if (vm::IsTransfer(op) && i + 1 < n) leaders.insert(i + 1);
  }

  std::vector<BasicBlock> blocks;
  std::vector<int> block_at(n, 0);
  for (auto it = leaders.begin(); it != leaders.end() && *it < n; ++it) {
    auto next = std::next(it);
    BasicBlock b;
    b.id = static_cast<int>(blocks.size());
    b.begin = *it;
    b.end = next == leaders.end() ? n : std::min(*next, n);
    for (std::size_t i = b.begin; i < b.end; ++i) block_at[i] = b.id;
    blocks.push_back(b);
  }

  std::vector<Edge> edges;
  for (BasicBlock& b : blocks) {
    const vm::Instruction& last = body[b.end - 1];
    b.entry = b.begin == 0;
    b.exit = vm::IsReturn(last.opcode);
    if (last.opcode == Opcode::kJz) {
      b.type = BlockType::kCondJump;
    } else if (b.exit) {
      b.type = BlockType::kExit;
    } else if (b.entry) {
      b.type = BlockType::kEntry;
    }
    auto target = [&](std::int64_t index) {
      return block_at[static_cast<std::size_t>(index)];
    };
    switch (last.opcode) {
      case Opcode::kJz:
        edges.push_back({b.id, block_at[b.end], EdgeLabel::kTrue});
        edges.push_back({b.id, target(last.operand), EdgeLabel::kFalse});
        break;
      case Opcode::kJmp:
        edges.push_back({b.id, target(last.operand), EdgeLabel::kUncond});
        break;
      default:
        if (!b.exit && b.end < n) {
          edges.push_back({b.id, block_at[b.end], EdgeLabel::kUncond});
        }
        break;
    }
  }
  return Cfg(&method, std::move(blocks), std::move(edges));
}

Cfg SplitCriticalEdges(const Cfg& g) {
  std::vector<BasicBlock> blocks = g.blocks();
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (g.OutDegree(e.from) > 1 && g.InDegree(e.to) > 1) {
      BasicBlock s;
      s.id = static_cast<int>(blocks.size());
      s.synthetic = true;
      s.begin = s.end = g.block(e.to).begin;
      blocks.push_back(s);
      edges.push_back({e.from, s.id, e.label});
      edges.push_back({s.id, e.to, EdgeLabel::kUncond});
    } else {
      edges.push_back(e);
    }
  }
  return Cfg(&g.method(), std::move(blocks), std::move(edges));
}

std::string EmitDot(const Cfg& g) {
  std::ostringstream out;
  out << "digraph \"" << g.method().QualifiedName() << "\" {\n";
  out << "  node [shape=box, fontname=monospace];\n";
  for (const BasicBlock& b : g.blocks()) {
    out << "  b" << b.id << " [label=\"B" << b.id << " "
        << BlockTypeName(b.type);
    if (b.synthetic) out << " (split)";
    for (std::size_t i = b.begin; i < b.end; ++i) {
      out << "\\l" << i << ": " << vm::Mnemonic(g.method().body[i].opcode);
    }
    out << "\\l\"";
    if (b.synthetic) out << ", style=dashed";
    out << "];\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  b" << e.from << " -> b" << e.to << " [label=\""
        << EdgeLabelName(e.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string DotFileName(const vm::Method& method, bool instrumented) {
  return method.QualifiedName() + (instrumented ? ".instr.dot" : ".dot");
}

}  // namespace svmweave::cfg
