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


// Checks the acceptance criteria end to end and prints one PASS/FAIL line
// per criterion. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "random_programs.h"
#include "svmweave/automata/cfg_automaton.h"
#include "svmweave/automata/property.h"
#include "svmweave/automata/regex.h"
#include "svmweave/automata/residual.h"
#include "svmweave/cfg/cfg.h"
#include "svmweave/engine/weaver.h"
#include "svmweave/monitor/monitor.h"
#include "svmweave/shadows/shadows.h"
#include "svmweave/stdlib/instrumentation.h"
#include "svmweave/stdlib/metrics.h"
#include "svmweave/stdlib/mutators.h"
#include "svmweave/stdlib/pipeline.h"
#include "svmweave/vm/assembler.h"
#include "svmweave/vm/interpreter.h"

namespace {

using namespace svmweave;
using testing::Rng;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure and keeps counting.
struct Check {
  Outcome out;
  void Expect(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

std::string Join(const std::set<int>& xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "{" + s + "}";
}

// ---------------------------------------------------------------------------
// 1. 7 -> 4 on iterdemo.

Outcome IterDemoReduction() {
  Check c;
  vm::Program p = vm::ParseProgram(testing::ReadFixture("iterdemo.svm"));
  automata::Property prop =
      automata::ParseProperty(testing::ReadFixture("unsafe_iterator.prop"));
  engine::WeaveResult full = stdlib::InstrumentEvents(p, prop, false);
  engine::WeaveResult residual = stdlib::InstrumentEvents(p, prop, true);

  // Source lines of the iterator example for each event call.
  const std::map<int, int> line_of = {{4, 2},   {6, 4},   {12, 7}, {15, 8},
                                      {17, 11}, {20, 13}, {23, 14}};
  std::set<int> hidden_lines;
  std::set<int> kept;
  const vm::Method& woven = *residual.program.Find("Demo.main");
  int original_index = 0;
  for (const vm::Instruction& ins : woven.body) {
    if (ins.synthetic) continue;
    if (line_of.count(original_index) > 0) {
      if (ins.hidden) {
        hidden_lines.insert(line_of.at(original_index));
      } else {
        kept.insert(original_index);
      }
    }
    ++original_index;
  }
  std::set<int> needed = testing::OracleNeededEvents(
      *p.Find("Demo.main"),
      {{"List.iterator", 'c'}, {"List.add", 'u'}, {"Iterator.next", 'n'}},
      "cn*u+n", 64);

  c.Expect(full.report.TotalSites() == 7,
           "full sites " + std::to_string(full.report.TotalSites()));
  c.Expect(residual.report.TotalSites() == 4,
           "residual sites " + std::to_string(residual.report.TotalSites()));
  c.Expect(residual.report.TotalHidden() == 3,
           "hidden " + std::to_string(residual.report.TotalHidden()));
  c.Expect(hidden_lines == std::set<int>{2, 13, 14},
           "hidden lines " + Join(hidden_lines));
  c.Expect(kept == needed, "kept " + Join(kept) + " oracle " + Join(needed));
  if (c.out.pass) {
    c.out.detail = "full=7 residual=4 hidden lines {2,13,14}, kept " +
                   Join(kept) + " = path oracle";
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 2. Verdict preservation.

Outcome VerdictPreservation() {
  Check c;
  Rng rng(20260101);
  long cases = 0;
  long violations = 0;
  long hidden = 0;
  long sites = 0;
  for (int n = 0; n < 500; ++n) {
    vm::Program p = testing::RandomProgram(rng);
    const vm::Method& m = *p.Find("Main.main");
    auto inputs = testing::AllInputs(m.nargs);
    for (int r = 0; r < 5; ++r) {
      std::string regex = testing::RandomRegex(rng, "abc", 3);
      automata::Property prop = testing::EventProperty(regex);
      engine::WeaveResult full = stdlib::InstrumentEvents(p, prop, false);
      engine::WeaveResult res = stdlib::InstrumentEvents(p, prop, true);
      hidden += res.report.TotalHidden();
      sites += full.report.TotalSites();
      for (const auto& args : inputs) {
        auto a = stdlib::RunMonitored(full.program, args, prop);
        auto b = stdlib::RunMonitored(res.program, args, prop);
        ++cases;
        violations += a.verdict == monitor::Verdict::kViolation ? 1 : 0;
        c.Expect(!a.exec.trap && !b.exec.trap, "trap in program " + std::to_string(n));
        c.Expect(a.verdict == b.verdict,
                 "program " + std::to_string(n) + " regex '" + regex +
                     "': full " + std::string(monitor::VerdictSymbol(a.verdict)) +
                     " residual " + std::string(monitor::VerdictSymbol(b.verdict)) +
                     "\n" + vm::SerializeProgram(p));
      }
    }
  }
  if (c.out.pass) {
    std::ostringstream d;
    d << cases << " runs equal (" << violations << " violating), hidden "
      << hidden << " of " << sites << " event sites";
    c.out.detail = d.str();
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 3. Shadow equivalence against a brute-force closure.

std::string CheckShadowClosure(const cfg::Cfg& g) {
  const vm::Method& m = g.method();
  using shadows::Shadow;
  auto is_return = [&](int i) {
    return vm::IsReturn(m.body[static_cast<std::size_t>(i)].opcode);
  };
  std::vector<Shadow> universe{Shadow::MethodEnter(), Shadow::MethodExit()};
  std::vector<std::pair<Shadow, Shadow>> gens;
  for (const cfg::BasicBlock& b : g.blocks()) {
    universe.push_back(Shadow::BlockEnter(b.id));
    universe.push_back(Shadow::BlockExit(b.id));
    std::vector<int> visible;
    for (int i = static_cast<int>(b.begin); i < static_cast<int>(b.end); ++i) {
      if (!m.body[static_cast<std::size_t>(i)].hidden) visible.push_back(i);
    }
    for (int i : visible) {
      universe.push_back(Shadow::Before(i));
      universe.push_back(Shadow::After(i));
    }
    if (b.begin == 0 && !b.synthetic) {
      gens.emplace_back(Shadow::MethodEnter(), Shadow::BlockEnter(b.id));
    }
    if (b.end > b.begin && is_return(static_cast<int>(b.end) - 1)) {
      gens.emplace_back(Shadow::MethodExit(), Shadow::BlockExit(b.id));
    }
    if (!visible.empty()) {
      gens.emplace_back(Shadow::BlockEnter(b.id), Shadow::Before(visible.front()));
      gens.emplace_back(Shadow::BlockExit(b.id), Shadow::After(visible.back()));
    }
    for (std::size_t k = 0; k + 1 < visible.size(); ++k) {
      gens.emplace_back(Shadow::After(visible[k]), Shadow::Before(visible[k + 1]));
    }
  }
  std::sort(universe.begin(), universe.end());
  if (universe != shadows::EnumerateShadows(g)) return "shadow universe differs";
  const std::size_t n = universe.size();
  auto idx = [&](const Shadow& s) {
    return static_cast<std::size_t>(
        std::lower_bound(universe.begin(), universe.end(), s) - universe.begin());
  };
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
  for (const auto& [a, b] : gens) {
    rel[idx(a)][idx(b)] = rel[idx(b)][idx(a)] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (rel[k][j]) rel[i][j] = true;
      }
    }
  }
  shadows::ShadowPartition part = shadows::EquivalenceClasses(g);
  std::vector<std::vector<bool>> got(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      got[i][j] = part.Equivalent(universe[i], universe[j]);
      if (got[i][j] != rel[i][j]) {
        return "pair " + universe[i].ToString() + " " + universe[j].ToString();
      }
    }
  }
  // Spot-check the single-pair entry point.
  for (std::size_t i = 0; i < n; i += 3) {
    std::size_t j = (i * 7 + 1) % n;
    if (shadows::ShadowEquiv(universe[i], universe[j], g) != rel[i][j]) {
      return "ShadowEquiv disagrees";
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!got[i][i]) return "not reflexive";
    for (std::size_t j = 0; j < n; ++j) {
      if (got[i][j] != got[j][i]) return "not symmetric";
      if (!got[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (got[j][k] && !got[i][k]) return "not transitive";
      }
    }
  }
  std::size_t members = 0;
  for (const auto& cls : part.classes()) members += cls.size();
  if (members != n) return "classes do not partition the shadows";
  return "";
}

Outcome ShadowEquivalence() {
  Check c;
  Rng rng(77);
  testing::RandomProgramOptions opt;
  opt.value_calls = true;
  opt.hide_probability = 0.15;
  long pairs = 0;
  for (int n = 0; n < 200; ++n) {
    vm::Program p = testing::RandomProgram(rng, opt);
    cfg::Cfg g = cfg::BuildCfg(*p.Find("Main.main"));
    for (const cfg::Cfg* graph : {&g}) {
      std::string err = CheckShadowClosure(*graph);
      c.Expect(err.empty(), "method " + std::to_string(n) + ": " + err);
    }
    cfg::Cfg split = cfg::SplitCriticalEdges(g);
    std::string err = CheckShadowClosure(split);
    c.Expect(err.empty(), "split method " + std::to_string(n) + ": " + err);
    auto size = shadows::EnumerateShadows(split).size();
    pairs += static_cast<long>(size * size);
  }
  if (c.out.pass) {
    c.out.detail = "200 methods, plain and split graphs, " +
                   std::to_string(pairs) + " split-graph pairs";
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 4. Collisions.

std::set<std::string> CollisionKeys(const engine::CollisionReport& r) {
  std::set<std::string> keys;
  for (const engine::Collision& col : r.collisions) {
    std::string t1 = col.transformer + " " + col.region;
    std::string t2 = col.other_transformer + " " + col.other_region;
    if (t2 < t1) std::swap(t1, t2);
    keys.insert(col.method + ": " + t1 + " ~ " + t2);
  }
  return keys;
}

Outcome Collisions() {
  Check c;
  vm::Program p = vm::ParseProgram(testing::ReadFixture("logging.svm"));
  auto lt = engine::ApplyTransformers(
      p, {stdlib::LoggingTransformer(), stdlib::TimerTransformer()});
  auto tl = engine::ApplyTransformers(
      p, {stdlib::TimerTransformer(), stdlib::LoggingTransformer()});
  auto tt = engine::ApplyTransformers(
      p, {stdlib::TimerTransformer(), stdlib::TimerTransformer()});
  std::set<std::string> expected = {
      "App.add: logging <enter,m> ~ timer <enter,m>",
      "App.add: logging <exit,m> ~ timer <exit,m>"};
  c.Expect(CollisionKeys(lt.collisions) == expected, "logging+timer report");
  c.Expect(CollisionKeys(tl.collisions) == expected, "timer+logging report");
  bool self = !tt.collisions.empty();
  for (const engine::Collision& col : tt.collisions.collisions) {
    self = self && col.transformer == "timer" && col.other_transformer == "timer";
  }
  c.Expect(self, "timer twice does not collide with itself");
  auto disjoint = engine::ApplyTransformers(
      p, {stdlib::ReturnMutator(), stdlib::DecisionMutator()});
  c.Expect(disjoint.collisions.empty(), "disjoint transformers collide");
  if (c.out.pass) {
    c.out.detail = std::to_string(lt.collisions.collisions.size()) +
                   " enter/exit collisions in either order, timer+timer " +
                   std::to_string(tt.collisions.collisions.size());
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 5. Product and marking.

Outcome AutomataCorrectness() {
  Check c;
  Rng rng(5150);
  const std::vector<std::string> sigma = {"a", "b", "c"};
  auto words = testing::AllWords(3, 6);
  for (int n = 0; n < 100; ++n) {
    automata::Nfa a = testing::RandomNfa(rng, sigma, 5);
    automata::Nfa b = testing::RandomNfa(rng, sigma, 5);
    automata::Nfa prod = automata::Product(a, b);
    for (const auto& w : words) {
      bool expect = testing::OracleAccepts(a, w) && testing::OracleAccepts(b, w);
      if (testing::OracleAccepts(prod, w) != expect) {
        c.Expect(false, "product pair " + std::to_string(n));
        break;
      }
    }
  }
  long marked_total = 0;
  for (int n = 0; n < 100; ++n) {
    automata::Nfa g = testing::RandomCfgAutomaton(rng, sigma, 10);
    std::string regex = testing::RandomRegex(rng, "abc", 2);
    automata::Nfa bad = automata::CompileRegex(regex, sigma);
    std::set<int> got = automata::MarkViolatingStates(g, bad);
    std::set<int> exact = testing::OracleMarking(g, bad);
    std::set<int> bounded =
        testing::EnumeratedMarking(g, testing::ToEcmaRegex(regex), 6);
    marked_total += static_cast<long>(got.size());
    c.Expect(got == exact, "marking " + std::to_string(n) + " '" + regex +
                               "': " + Join(got) + " vs " + Join(exact));
    bool covered = std::includes(got.begin(), got.end(), bounded.begin(),
                                 bounded.end());
    c.Expect(covered, "path enumeration marks more in automaton " +
                          std::to_string(n));
  }
  if (c.out.pass) {
    c.out.detail = "100 products x " + std::to_string(words.size()) +
                   " words, 100 markings (" + std::to_string(marked_total) +
                   " marked states)";
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 6. Monitor latching and the substring oracle.

Outcome MonitorLatching() {
  Check c;
  Rng rng(99);
  const std::vector<std::string> sigma = {"a", "b", "c"};
  std::uniform_int_distribution<int> sym(0, 2);
  std::uniform_int_distribution<int> len(1, 20);
  for (int n = 0; n < 1000; ++n) {
    std::string regex = testing::RandomRegex(rng, "abc", 2);
    monitor::Monitor mon(automata::CompileRegex(regex, sigma));
    bool seen_bottom = mon.verdict() == monitor::Verdict::kViolation;
    int steps = len(rng);
    for (int k = 0; k < steps; ++k) {
      monitor::Verdict v = mon.Step(sigma[static_cast<std::size_t>(sym(rng))]);
      if (seen_bottom) c.Expect(v == monitor::Verdict::kViolation, "verdict left bottom");
      seen_bottom = seen_bottom || v == monitor::Verdict::kViolation;
    }
    if (seen_bottom) {
      // Every continuation of a violating trace stays violating.
      for (int e = 0; e < 5; ++e) {
        monitor::Monitor copy = mon;
        for (int k = 0; k < 5; ++k) {
          copy.Step(sigma[static_cast<std::size_t>(sym(rng))]);
          c.Expect(copy.verdict() == monitor::Verdict::kViolation,
                   "extension left bottom");
        }
      }
    }
  }
  auto words = testing::AllWords(3, 8);
  long checked = 0;
  for (int r = 0; r < 20; ++r) {
    std::string regex = testing::RandomRegex(rng, "abc", 3);
    automata::Nfa bad = automata::CompileRegex(regex, sigma);
    std::regex ecma(testing::ToEcmaRegex(regex));
    for (const auto& w : words) {
      monitor::Monitor mon(bad);
      std::string text;
      for (int s : w) {
        mon.Step(sigma[static_cast<std::size_t>(s)]);
        text += sigma[static_cast<std::size_t>(s)];
      }
      bool expect = std::regex_search(text, ecma);
      ++checked;
      if ((mon.verdict() == monitor::Verdict::kViolation) != expect) {
        c.Expect(false, "regex '" + regex + "' trace '" + text + "'");
        break;
      }
    }
  }
  if (c.out.pass) {
    c.out.detail = "1000 random traces latch; " + std::to_string(checked) +
                   " traces of length <= 8 agree with the substring oracle";
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 7. Semantics preservation and mutant shape.

engine::TransformerInstance ProbeTransformer() {
  using engine::DynamicValue;
  engine::TransformerInstance t;
  t.name = "probe";
  t.before_method_call = [](const engine::MethodCallContext& call,
                            engine::Joinpoint& jp) {
    for (int k = 0; k < call.nargs() && k < 7; ++k) {
      jp.Print({vm::Value::Str("arg "), DynamicValue::MethodArg(k)});
    }
  };
  t.after_method_call = [](const engine::MethodCallContext& call,
                           engine::Joinpoint& jp) {
    if (call.returns()) jp.Invoke("Probe.result", {DynamicValue::MethodResult()});
  };
  t.on_basic_block_enter = [](const engine::BasicBlockContext& b,
                              engine::Joinpoint& jp) {
    int nlocals = b.method().nlocals();
    if (nlocals > 0) jp.Invoke("Probe.local", {DynamicValue::LocalSlot(nlocals - 1)});
  };
  return t;
}

vm::HostRegistry Hosts(const vm::Program& p) {
  vm::HostRegistry hosts = stdlib::MonitoringHosts(vm::Program());
  hosts.Register("Val.f", [](std::span<const vm::Value> args, vm::HostEnv&) {
    std::int64_t x = args[0].is_int() ? args[0].as_int() : 0;
    return std::optional<vm::Value>(vm::Value::Int(2 * x + 1));
  });
  hosts.RegisterStubs(p);
  return hosts;
}

std::string SameBaseBehaviour(const vm::Program& original,
                              const vm::Program& woven) {
  const vm::Method& entry = *original.Find(original.EntryName());
  auto inputs = testing::AllInputs(entry.nargs);
  for (const auto& args : inputs) {
    vm::ExecResult a = vm::Execute(original, args, Hosts(original));
    vm::ExecResult b = vm::Execute(woven, args, Hosts(woven));
    if (a.return_value != b.return_value) return "return value differs";
    if (a.trap.has_value() != b.trap.has_value() ||
        (a.trap && a.trap->kind != b.trap->kind)) {
      return "trap differs";
    }
    if (testing::BaseHostCalls(a, original) != testing::BaseHostCalls(b, original)) {
      return "host calls differ";
    }
  }
  return "";
}

std::string MutantShape(const vm::Program& p) {
  const vm::Method& m = *p.Find(p.EntryName());
  using vm::Instruction;
  using vm::Opcode;
  std::map<int, testing::ExpectedEdit> ret, dec, arith;
  for (std::size_t i = 0; i < m.body.size(); ++i) {
    int k = static_cast<int>(i);
    Opcode op = m.body[i].opcode;
    if (op == Opcode::kRetv) {
      ret[k] = {{Instruction::Op(Opcode::kPop), Instruction::Const(0)}, false};
    }
    if (op == Opcode::kJz) {
      dec[k] = {{Instruction::Const(0), Instruction::Op(Opcode::kEq)}, false};
    }
    static const std::map<Opcode, Opcode> kSwap = {{Opcode::kAdd, Opcode::kSub},
                                                   {Opcode::kSub, Opcode::kAdd},
                                                   {Opcode::kMul, Opcode::kDiv},
                                                   {Opcode::kDiv, Opcode::kMul}};
    if (kSwap.count(op) > 0) arith[k] = {{Instruction::Op(kSwap.at(op))}, true};
  }
  struct Case {
    engine::TransformerInstance t;
    const std::map<int, testing::ExpectedEdit>* edits;
  };
  std::vector<Case> cases = {{stdlib::ReturnMutator(), &ret},
                             {stdlib::DecisionMutator(), &dec},
                             {stdlib::ArithmeticMutator(), &arith}};
  for (Case& cs : cases) {
    auto result = engine::ApplyTransformers(p, {cs.t});
    std::string diff = testing::DiffBodies(
        testing::ExpectedMutant(m, *cs.edits),
        result.program.Find(m.QualifiedName())->body);
    if (!diff.empty()) return cs.t.name + ": " + diff;
  }
  // Random operator choice: same shape, a different operator in place.
  auto random = engine::ApplyTransformers(
      p, {stdlib::ArithmeticMutator(stdlib::ArithmeticMode::kRandom, 7)});
  const auto& body = random.program.Find(m.QualifiedName())->body;
  std::size_t j = 0;
  for (std::size_t i = 0; i < m.body.size(); ++i, ++j) {
    if (j >= body.size()) return "random arithmetic: too short";
    if (arith.count(static_cast<int>(i)) > 0) {
      if (!body[j].synthetic || body[j].opcode == m.body[i].opcode ||
          arith.count(static_cast<int>(i)) == 0) {
        return "random arithmetic: operator kept at " + std::to_string(i);
      }
    } else if (body[j].opcode != m.body[i].opcode || body[j].synthetic) {
      return "random arithmetic: untargeted change at " + std::to_string(i);
    }
  }
  return "";
}

Outcome SemanticsPreservation() {
  Check c;
  std::vector<std::pair<std::string, vm::Program>> programs;
  for (const char* f : {"iterdemo.svm", "logging.svm", "diamond.svm", "straight.svm"}) {
    programs.emplace_back(f, vm::ParseProgram(testing::ReadFixture(f)));
  }
  Rng rng(4242);
  testing::RandomProgramOptions opt;
  opt.value_calls = true;
  for (int n = 0; n < 200; ++n) {
    opt.annotate_log = n % 2 == 0;
    programs.emplace_back("random " + std::to_string(n),
                          testing::RandomProgram(rng, opt));
  }
  automata::Property events = testing::EventProperty("a b");
  automata::Property iter =
      automata::ParseProperty(testing::ReadFixture("unsafe_iterator.prop"));
  int woven_programs = 0;
  for (const auto& [name, p] : programs) {
    const automata::Property& prop = name == "iterdemo.svm" ? iter : events;
    std::vector<engine::TransformerInstance> ts = {
        stdlib::LoggingTransformer(), stdlib::TimerTransformer(),
        stdlib::BlockPrinterTransformer(),
        stdlib::EventExtractionTransformer(prop.spec), ProbeTransformer()};
    try {
      auto all = engine::ApplyTransformers(p, ts);
      std::string err = SameBaseBehaviour(p, all.program);
      c.Expect(err.empty(), name + ": " + err);
      for (const auto& t : ts) {
        err = SameBaseBehaviour(p, engine::ApplyTransformers(p, {t}).program);
        c.Expect(err.empty(), name + " with " + t.name + ": " + err);
      }
      err = MutantShape(p);
      c.Expect(err.empty(), name + " mutant " + err);
      ++woven_programs;
    } catch (const std::exception& e) {
      c.Expect(false, name + ": " + e.what());
    }
  }
  if (c.out.pass) {
    c.out.detail = std::to_string(woven_programs) +
                   " programs: base behaviour unchanged, mutants match the edit oracle";
  }
  return c.out;
}

// ---------------------------------------------------------------------------
// 8. Metrics.

std::map<std::string, std::string> MetricLines(const vm::Program& p) {
  auto r = engine::ApplyTransformers(
      p, {stdlib::McCabeTransformer(), stdlib::AbcTransformer(),
          stdlib::UnusedVarsTransformer()});
  std::map<std::string, std::string> out;
  std::regex line("metric=(\\S+) method=(\\S+) value=(\\S+)");
  for (const std::string& l : r.report.lines) {
    std::smatch m;
    if (std::regex_match(l, m, line)) out[m[1].str() + " " + m[2].str()] = m[3];
  }
  return out;
}

Outcome Metrics() {
  Check c;
  vm::Program straight = vm::ParseProgram(testing::ReadFixture("straight.svm"));
  vm::Program diamond = vm::ParseProgram(testing::ReadFixture("diamond.svm"));
  vm::Program empty = vm::ParseProgram("func E.empty(0,0):\n  ret\n");
  c.Expect(stdlib::McCabe(*straight.Find("Shape.straight")) == 1, "McCabe straight");
  c.Expect(stdlib::McCabe(*diamond.Find("Shape.diamond")) == 2, "McCabe diamond");
  c.Expect(stdlib::Abc(*empty.Find("E.empty")) == 0.0, "ABC empty");
  c.Expect(MetricLines(straight)["mccabe Shape.straight"] == "1", "McCabe line straight");
  c.Expect(MetricLines(diamond)["mccabe Shape.diamond"] == "2", "McCabe line diamond");
  c.Expect(MetricLines(empty)["abc E.empty"] == "0", "ABC line empty");
  Rng rng(8);
  testing::RandomProgramOptions opt;
  opt.value_calls = true;
  for (int n = 0; n < 100; ++n) {
    vm::Program p = testing::RandomProgram(rng, opt);
    const vm::Method& m = *p.Find("Main.main");
    std::vector<bool> loaded(static_cast<std::size_t>(m.nlocals), false);
    for (const vm::Instruction& ins : m.body) {
      if (ins.opcode == vm::Opcode::kLoad) loaded[static_cast<std::size_t>(ins.operand)] = true;
    }
    int expect = static_cast<int>(std::count(loaded.begin(), loaded.end(), false));
    c.Expect(stdlib::UnusedVars(m) == expect, "unused_vars method " + std::to_string(n));
    c.Expect(MetricLines(p)["unused_vars Main.main"] == std::to_string(expect),
             "unused_vars line method " + std::to_string(n));
  }
  if (c.out.pass) {
    c.out.detail = "McCabe 1/2, ABC 0, unused_vars matches the LOAD scan on 100 methods";
  }
  return c.out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria = {
      {1, "iterdemo 7->4 reduction", IterDemoReduction, 1},
      {2, "verdict preservation", VerdictPreservation, 60},
      {3, "shadow equivalence oracle", ShadowEquivalence, 10},
      {4, "collision semantics", Collisions, 0},
      {5, "automata correctness", AutomataCorrectness, 30},
      {6, "monitor latching", MonitorLatching, 0},
      {7, "semantics preservation", SemanticsPreservation, 0},
      {8, "metrics", Metrics, 0},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    if (o.pass && cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
      o = {false, "took " + std::to_string(secs) + " s, limit " +
                      std::to_string(cr.limit_seconds) + " s"};
    }
    failed += o.pass ? 0 : 1;
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << cr.id << " "
              << cr.name << " [" << t.str() << " s]: " << o.detail << "\n";
  }
  return failed == 0 ? 0 : 1;
}
