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


#include <gtest/gtest.h>

#include "oracles.h"
#include "random_programs.h"
#include "svmweave/cfg/cfg.h"
#include "svmweave/support/error.h"
#include "svmweave/vm/assembler.h"

namespace svmweave::cfg {
namespace {

vm::Program Diamond() {
  return vm::ParseProgram(testing::ReadFixture("diamond.svm"));
}

// if (x) y = 1; return y  -- the jump edge from B0 to the join is critical.
vm::Program IfThen() {
  return vm::ParseProgram(
      "func S.f(1,2):\n  load 0\n  jz join\n  const 1\n  store 1\njoin:\n"
      "  load 1\n  retv\n");
}

TEST(Cfg, StraightLineIsOneBlock) {
  vm::Program p = vm::ParseProgram(testing::ReadFixture("straight.svm"));
  Cfg g = BuildCfg(*p.Find("Shape.straight"));
  ASSERT_EQ(g.blocks().size(), 1u);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_TRUE(g.block(0).entry);
  EXPECT_TRUE(g.block(0).exit);
  EXPECT_EQ(g.block(0).type, BlockType::kExit);
}

TEST(Cfg, DiamondHasFourBlocksAndLabelledEdges) {
  vm::Program p = Diamond();
  Cfg g = BuildCfg(*p.Find("Shape.diamond"));
  ASSERT_EQ(g.blocks().size(), 4u);
  EXPECT_EQ(g.edges().size(), 4u);
  EXPECT_EQ(g.block(0).type, BlockType::kCondJump);
  // Fall-through is the TRUE edge.
  EXPECT_EQ(g.TrueBranch(0), 1);
  EXPECT_EQ(g.FalseBranch(0), 2);
  EXPECT_EQ(g.Successors(1), std::vector<int>{3});
  EXPECT_EQ(g.Predecessors(3), (std::vector<int>{1, 2}));
  EXPECT_EQ(g.ExitBlocks(), std::vector<int>{3});
  EXPECT_TRUE(g.CriticalEdges().empty());
}

TEST(Cfg, BlockOfMapsInstructions) {
  vm::Program p = Diamond();
  Cfg g = BuildCfg(*p.Find("Shape.diamond"));
  EXPECT_EQ(g.BlockOf(0), 0);
  EXPECT_EQ(g.BlockOf(2), 1);
  EXPECT_EQ(g.BlockOf(5), 2);
  EXPECT_EQ(g.BlockOf(7), 3);
}

TEST(Cfg, SplitsCriticalEdge) {
  vm::Program p = IfThen();
  Cfg g = BuildCfg(*p.Find("S.f"));
  ASSERT_EQ(g.CriticalEdges().size(), 1u);
  Cfg s = SplitCriticalEdges(g);
  ASSERT_EQ(s.blocks().size(), g.blocks().size() + 1);
  const BasicBlock& split = s.blocks().back();
  EXPECT_TRUE(split.synthetic);
  EXPECT_TRUE(split.empty());
  EXPECT_EQ(s.FalseBranch(0), split.id);
  EXPECT_EQ(s.Successors(split.id), std::vector<int>{2});
  EXPECT_TRUE(s.CriticalEdges().empty());
  // Idempotent.
  EXPECT_EQ(SplitCriticalEdges(s).blocks().size(), s.blocks().size());
}

TEST(Cfg, RandomGraphsAgreeWithInstructionSuccessors) {
  testing::Rng rng(21);
  for (int n = 0; n < 200; ++n) {
    vm::Program p = testing::RandomProgram(rng);
    const vm::Method& m = *p.Find("Main.main");
    Cfg g = BuildCfg(m);
    // Every instruction lies in exactly one block, and block-level edges
    // equal the successors of the block's last instruction.
    std::vector<int> owner(m.body.size(), -1);
    for (const BasicBlock& b : g.blocks()) {
      for (std::size_t i = b.begin; i < b.end; ++i) {
        EXPECT_EQ(owner[i], -1);
        owner[i] = b.id;
      }
    }
    for (int o : owner) EXPECT_NE(o, -1);
    for (const BasicBlock& b : g.blocks()) {
      std::set<int> expect;
      for (int s : testing::InstructionSuccessors(m, static_cast<int>(b.end) - 1)) {
        expect.insert(owner[static_cast<std::size_t>(s)]);
      }
      std::vector<int> succ = g.Successors(b.id);
      EXPECT_EQ(std::set<int>(succ.begin(), succ.end()), expect);
    }
    Cfg s = SplitCriticalEdges(g);
    EXPECT_TRUE(s.CriticalEdges().empty());
    EXPECT_EQ(s.edges().size() - g.edges().size(),
              s.blocks().size() - g.blocks().size());
  }
}

TEST(Cfg, DotNamesBlocksAndEdges) {
  vm::Program p = IfThen();
  std::string dot = EmitDot(SplitCriticalEdges(BuildCfg(*p.Find("S.f"))));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("B0"), std::string::npos);
  EXPECT_NE(dot.find("TRUE"), std::string::npos);
  EXPECT_NE(dot.find("FALSE"), std::string::npos);
  EXPECT_NE(dot.find("dashed"), std::string::npos);
  EXPECT_EQ(DotFileName(*p.Find("S.f"), false), "S.f.dot");
  EXPECT_EQ(DotFileName(*p.Find("S.f"), true), "S.f.instr.dot");
}

TEST(Cfg, RejectsExtern) {
  vm::Program p = vm::ParseProgram("extern X.g(0)\nfunc A.f(0,0): ret\n");
  EXPECT_THROW(BuildCfg(*p.Find("X.g")), Error);
}

}  // namespace
}  // namespace svmweave::cfg
