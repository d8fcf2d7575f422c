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
#include "svmweave/cfg/cfg.h"
#include "svmweave/shadows/shadows.h"
#include "svmweave/support/error.h"
#include "svmweave/vm/assembler.h"

namespace svmweave::shadows {
namespace {

cfg::Cfg DiamondCfg(vm::Program& holder) {
  holder = vm::ParseProgram(testing::ReadFixture("diamond.svm"));
  return cfg::BuildCfg(*holder.Find("Shape.diamond"));
}

TEST(Shadow, Formats) {
  EXPECT_EQ(Shadow::Before(3).ToString(), "<before,i3>");
  EXPECT_EQ(Shadow::After(0).ToString(), "<after,i0>");
  EXPECT_EQ(Shadow::BlockExit(2).ToString(), "<exit,b2>");
  EXPECT_EQ(Shadow::MethodEnter().ToString(), "<enter,m>");
}

TEST(Shadows, EnumeratesEveryRegion) {
  vm::Program p;
  cfg::Cfg g = DiamondCfg(p);
  // 9 instructions x 2 + 4 blocks x 2 + method enter/exit.
  EXPECT_EQ(EnumerateShadows(g).size(), 9u * 2 + 4 * 2 + 2);
}

// Diamond: B0 = [0,1] (load, jz), B1 = [2,4], B2 = [5,6], B3 = [7,8].
TEST(Shadows, DiamondClasses) {
  vm::Program p;
  cfg::Cfg g = DiamondCfg(p);
  ShadowPartition part(g);
  EXPECT_TRUE(part.Equivalent(Shadow::MethodEnter(), Shadow::BlockEnter(0)));
  EXPECT_TRUE(part.Equivalent(Shadow::MethodEnter(), Shadow::Before(0)));
  EXPECT_TRUE(part.Equivalent(Shadow::After(0), Shadow::Before(1)));
  EXPECT_TRUE(part.Equivalent(Shadow::After(1), Shadow::BlockExit(0)));
  EXPECT_TRUE(part.Equivalent(Shadow::MethodExit(), Shadow::After(8)));
  EXPECT_TRUE(part.Equivalent(Shadow::BlockEnter(3), Shadow::Before(7)));
  // Block boundaries separate classes.
  EXPECT_FALSE(part.Equivalent(Shadow::BlockExit(0), Shadow::BlockEnter(1)));
  EXPECT_FALSE(part.Equivalent(Shadow::After(4), Shadow::Before(5)));
  EXPECT_FALSE(part.Equivalent(Shadow::MethodEnter(), Shadow::MethodExit()));
}

TEST(Shadows, StraightLineCollapsesToOneClassPerGap) {
  vm::Program p = vm::ParseProgram("func A.f(0,0):\n  const 1\n  pop\n  ret\n");
  cfg::Cfg g = cfg::BuildCfg(*p.Find("A.f"));
  // Gaps: entry, between 0-1, between 1-2, exit.
  EXPECT_EQ(EquivalenceClasses(g).classes().size(), 4u);
}

TEST(Shadows, HiddenInstructionsLeaveTheUniverse) {
  vm::Program p = vm::ParseProgram("func A.f(0,0):\n  const 1\n  pop\n  ret\n");
  p.FindMutable("A.f")->body[1].hidden = true;
  cfg::Cfg g = cfg::BuildCfg(*p.Find("A.f"));
  std::vector<Shadow> all = EnumerateShadows(g);
  EXPECT_EQ(std::count(all.begin(), all.end(), Shadow::Before(1)), 0);
  ShadowPartition part(g);
  EXPECT_TRUE(part.Equivalent(Shadow::After(0), Shadow::Before(2)));
  EXPECT_THROW(part.ClassOf(Shadow::After(1)), Error);
}

TEST(Shadows, ForeignShadowThrows) {
  vm::Program p;
  cfg::Cfg g = DiamondCfg(p);
  EXPECT_THROW(ShadowEquiv(Shadow::Before(40), Shadow::Before(0), g), Error);
  EXPECT_THROW(ShadowEquiv(Shadow::BlockEnter(9), Shadow::Before(0), g), Error);
}

TEST(Shadows, SplitBlocksFormSingletons) {
  vm::Program p = vm::ParseProgram(
      "func S.f(1,2):\n  load 0\n  jz join\n  const 1\n  store 1\njoin:\n"
      "  load 1\n  retv\n");
  cfg::Cfg g = cfg::SplitCriticalEdges(cfg::BuildCfg(*p.Find("S.f")));
  int split = g.blocks().back().id;
  ShadowPartition part(g);
  EXPECT_EQ(part.classes()[static_cast<std::size_t>(part.ClassOf(Shadow::BlockEnter(split)))].size(), 1u);
  EXPECT_FALSE(part.Equivalent(Shadow::BlockEnter(split), Shadow::BlockExit(split)));
}

TEST(Locators, MatchTheirShadowFamilies) {
  vm::Program p = vm::ParseProgram(testing::ReadFixture("iterdemo.svm"));
  cfg::Cfg g = cfg::SplitCriticalEdges(cfg::BuildCfg(*p.Find("Demo.main")));
  EXPECT_EQ(MatchLocator(LocatorKind::kBeforeMethodCall, g).size(), 8u);
  EXPECT_EQ(MatchLocator(LocatorKind::kAfterMethodCall, g).size(), 8u);
  EXPECT_EQ(MatchLocator(LocatorKind::kBeforeInstruction, g).size(),
            p.Find("Demo.main")->body.size());
  EXPECT_EQ(MatchLocator(LocatorKind::kOnMethodEnter, g),
            std::vector<Shadow>{Shadow::MethodEnter()});
  EXPECT_EQ(MatchLocator(LocatorKind::kOnTrueBranchEnter, g).size(), 1u);
  EXPECT_EQ(MatchLocator(LocatorKind::kOnFalseBranchEnter, g).size(), 1u);
  EXPECT_TRUE(MatchLocator(LocatorKind::kOnClassEnter, g).empty());
  EXPECT_EQ(LocatorName(LocatorKind::kBeforeMethodCall), "BeforeMethodCall");
}

TEST(Shadows, GeneratorsCoverRulesOneToFive) {
  vm::Program p;
  cfg::Cfg g = DiamondCfg(p);
  auto gens = EquivalenceGenerators(g);
  auto has = [&](Shadow a, Shadow b) {
    for (const auto& [x, y] : gens) {
      if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
  };
  EXPECT_TRUE(has(Shadow::MethodEnter(), Shadow::BlockEnter(0)));
  EXPECT_TRUE(has(Shadow::MethodExit(), Shadow::BlockExit(3)));
  EXPECT_TRUE(has(Shadow::BlockEnter(1), Shadow::Before(2)));
  EXPECT_TRUE(has(Shadow::BlockExit(2), Shadow::After(6)));
  EXPECT_TRUE(has(Shadow::After(2), Shadow::Before(3)));
}

}  // namespace
}  // namespace svmweave::shadows
