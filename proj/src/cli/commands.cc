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


#include "svmweave/cli/commands.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "svmweave/automata/property.h"
#include "svmweave/automata/residual.h"
#include "svmweave/cfg/cfg.h"
#include "svmweave/engine/config.h"
#include "svmweave/engine/weaver.h"
#include "svmweave/monitor/monitor.h"
#include "svmweave/stdlib/pipeline.h"
#include "svmweave/stdlib/registry.h"
#include "svmweave/support/error.h"
#include "svmweave/vm/assembler.h"

namespace svmweave::cli {

namespace {

namespace fs = std::filesystem;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

vm::Program LoadProgram(const RunConfig& c) {
  if (c.input.empty()) throw Error(c.command + ": no input file");
  return vm::ParseProgram(ReadFile(c.input));
}

automata::Property LoadProperty(const RunConfig& c, bool required) {
  if (!c.property_path) {
    if (required) throw Error(c.command + " needs --property");
    return {};
  }
  return automata::ParseProperty(ReadFile(*c.property_path));
}

// Defaults < config file < command line.
engine::Config Layered(const RunConfig& c) {
  engine::Config merged;
  merged.dump_cfg = false;
  if (c.config_path) merged.MergeFrom(engine::ParseConfig(ReadFile(*c.config_path)));
  engine::Config cli;
  cli.scope = c.scope;
  cli.transformers = c.transformers;
  cli.dump_cfg = c.dump_cfg;
  cli.out = c.out;
  merged.MergeFrom(cli);
  return merged;
}

// Directory for DOT files: next to the output file, else the working one.
fs::path DumpDir(const std::optional<std::string>& out) {
  if (!out) return fs::current_path();
  fs::path parent = fs::path(*out).parent_path();
  return parent.empty() ? fs::current_path() : parent;
}

std::string JoinInts(const std::set<int>& xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s.empty() ? "-" : s;
}

std::string FormatArgs(const std::vector<vm::Value>& args) {
  std::string s;
  for (const vm::Value& v : args) s += (s.empty() ? "" : ", ") + v.Repr();
  return s;
}

bool IsPrintExtern(const std::string& callee) {
  return callee.rfind(vm::kPrintExtern, 0) == 0;
}

void PrintExecution(const vm::ExecResult& r,
                    const std::optional<automata::Property>& property,
                    std::ostream& out) {
  for (const vm::HostCall& call : r.host_calls) {
    if (IsPrintExtern(call.callee)) {
      std::string line;
      for (const vm::Value& v : call.args) line += v.ToString();
      out << line << "\n";
    } else if (call.callee == monitor::kEmitExtern) {
      vm::ExecResult one;
      one.host_calls.push_back(call);
      if (!property) continue;
      for (const monitor::Event& e :
           monitor::TraceFromExecution(one, property->spec)) {
        out << "event " << e.ToLogLine() << "\n";
      }
    } else {
      out << "call " << call.callee << "(" << FormatArgs(call.args) << ")\n";
    }
  }
}

int CmdAssemble(const RunConfig& c, std::ostream& out) {
  vm::Program p = LoadProgram(c);
  std::string text = vm::SerializeProgram(p);
  if (c.out) {
    WriteFile(*c.out, text);
    out << "methods=" << p.methods().size() << " wrote " << *c.out << "\n";
  } else {
    out << text;
  }
  return 0;
}

int CmdRun(const RunConfig& c, std::ostream& out) {
  vm::Program p = LoadProgram(c);
  std::optional<automata::Property> property;
  if (c.property_path) {
    property = LoadProperty(c, true);
    p = stdlib::InstrumentEvents(p, *property, false).program;
  }
  std::vector<vm::Value> args;
  for (const std::string& a : c.args) args.push_back(ParseArgument(a));
  vm::ExecResult r =
      vm::Execute(p, args, stdlib::MonitoringHosts(p), c.fuel);
  PrintExecution(r, property, out);
  if (property) {
    monitor::Monitor m(property->BadAutomaton());
    m.RunTrace(monitor::TraceFromExecution(r, property->spec));
    out << "verdict=" << monitor::VerdictSymbol(m.verdict()) << "\n";
  }
  if (r.trap) {
    out << "trap=" << vm::TrapKindName(r.trap->kind) << " at " << r.trap->method
        << "@" << r.trap->pc << ": " << r.trap->message << "\n";
    return 2;
  }
  out << "result=" << (r.return_value ? r.return_value->Repr() : "void")
      << " fuel=" << r.fuel_used << "\n";
  return 0;
}

int CmdInstrument(const RunConfig& c, std::ostream& out) {
  vm::Program p = LoadProgram(c);
  engine::Config config = Layered(c);
  if (!config.transformers || config.transformers->empty()) {
    throw Error("instrument: no transformers given");
  }
  stdlib::TransformerOptions options;
  options.seed = c.seed;
  if (c.property_path) options.property = LoadProperty(c, true);
  std::vector<engine::TransformerInstance> ts;
  for (const std::string& name : *config.transformers) {
    ts.push_back(stdlib::MakeTransformer(name, config.transformer_args[name],
                                         options));
  }
  engine::WeaveOptions weave;
  if (config.scope) weave.scope = engine::ScopePattern(*config.scope);
  engine::WeaveResult result = engine::ApplyTransformers(p, ts, weave);

  for (const std::string& line : result.report.lines) out << line << "\n";
  for (const engine::MethodWeave& e : result.report.entries) {
    out << "transformer=" << e.transformer << " method=" << e.method
        << " sites=" << e.used.size() << " inserted=" << e.inserted
        << " removed=" << e.removed << " hidden=" << e.hidden << "\n";
  }
  for (const engine::Collision& col : result.collisions.collisions) {
    out << "collision method=" << col.method << " " << col.transformer << "#"
        << col.application << " " << col.region << " ~ "
        << col.other_transformer << "#" << col.other_application << " "
        << col.other_region << "\n";
  }
  out << "woven=" << result.report.TotalSites()
      << " hidden=" << result.report.TotalHidden()
      << " collisions=" << result.collisions.collisions.size() << "\n";

  if (config.out) {
    WriteFile(*config.out, vm::SerializeProgram(result.program));
    out << "wrote " << *config.out << "\n";
  }
  if (config.dump_cfg.value_or(false)) {
    fs::path dir = DumpDir(config.out);
    for (const vm::Method& m : p.methods()) {
      if (m.is_extern || !weave.scope.Matches(m.QualifiedName())) continue;
      const vm::Method* woven = result.program.Find(m.QualifiedName());
      WriteFile(dir / cfg::DotFileName(m, false), cfg::EmitDot(cfg::BuildCfg(m)));
      WriteFile(dir / cfg::DotFileName(*woven, true),
                cfg::EmitDot(cfg::SplitCriticalEdges(cfg::BuildCfg(*woven))));
    }
  }
  return 0;
}

int CmdAnalyze(const RunConfig& c, std::ostream& out) {
  vm::Program p = LoadProgram(c);
  automata::Property property = LoadProperty(c, true);
  automata::Nfa bad = property.BadAutomaton();
  engine::ScopePattern scope(c.scope.value_or(""));
  for (const vm::Method& m : p.methods()) {
    if (m.is_extern || !scope.Matches(m.QualifiedName())) continue;
    automata::ResidualPlan plan =
        automata::ComputeResidualPlan(p, m, property.spec, bad);
    int marked_events = 0;
    for (int q : plan.event_states) marked_events += plan.marked.count(q) ? 1 : 0;
    out << "method=" << plan.method << " states=" << plan.event_states.size()
        << " marked=" << marked_events
        << " nfa_states=" << plan.automaton.state_count()
        << " eligible=" << (plan.eligible ? "yes" : "no")
        << " keep=" << JoinInts(plan.keep) << " hide=" << JoinInts(plan.hide)
        << "\n";
    if (!plan.eligible) out << "  reason: " << plan.reason << "\n";
    if (c.dump_cfg.value_or(false)) {
      fs::path file = DumpDir(c.out) / (m.QualifiedName() + ".nfa.dot");
      WriteFile(file, automata::EmitDot(plan.automaton, plan.marked));
      out << "wrote " << file.string() << "\n";
    }
  }
  return 0;
}

std::vector<std::vector<vm::Value>> InputVectors(const RunConfig& c, int nargs) {
  std::vector<std::vector<vm::Value>> vectors;
  if (!c.inputs.empty()) {
    for (const std::string& spec : c.inputs) {
      std::vector<vm::Value> v;
      if (!spec.empty()) {
        for (const std::string& a : engine::SplitList(spec)) {
          v.push_back(ParseArgument(a));
        }
      }
      vectors.push_back(std::move(v));
    }
    return vectors;
  }
  if (nargs > 12) throw Error("verify: give --input for entries with many arguments");
  for (int bits = 0; bits < (1 << nargs); ++bits) {
    std::vector<vm::Value> v;
    for (int k = 0; k < nargs; ++k) v.push_back(vm::Value::Int((bits >> k) & 1));
    vectors.push_back(std::move(v));
  }
  return vectors;
}

int CmdVerify(const RunConfig& c, std::ostream& out) {
  vm::Program p = LoadProgram(c);
  automata::Property property = LoadProperty(c, true);
  engine::WeaveOptions weave;
  if (c.scope) weave.scope = engine::ScopePattern(*c.scope);
  vm::Program full = stdlib::InstrumentEvents(p, property, false, weave).program;
  vm::Program residual =
      stdlib::InstrumentEvents(p, property, true, weave).program;
  const vm::Method* entry = p.Find(p.EntryName());
  bool all_equal = true;
  for (const auto& args : InputVectors(c, entry->nargs)) {
    auto a = stdlib::RunMonitored(full, args, property, c.fuel);
    auto b = stdlib::RunMonitored(residual, args, property, c.fuel);
    bool equal = a.verdict == b.verdict;
    all_equal = all_equal && equal;
    std::string shown;
    for (const vm::Value& v : args) shown += (shown.empty() ? "" : ",") + v.Repr();
    out << "input=" << (shown.empty() ? "-" : shown)
        << " full=" << monitor::VerdictSymbol(a.verdict)
        << " residual=" << monitor::VerdictSymbol(b.verdict)
        << " equal=" << (equal ? "yes" : "no") << "\n";
  }
  return all_equal ? 0 : 3;
}

}  // namespace

vm::Value ParseArgument(const std::string& text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (!text.empty() && ec == std::errc() && ptr == text.data() + text.size()) {
    return vm::Value::Int(v);
  }
  return vm::Value::Str(text);
}

int RunCommand(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "assemble") return CmdAssemble(config, out);
    if (config.command == "run") return CmdRun(config, out);
    if (config.command == "instrument") return CmdInstrument(config, out);
    if (config.command == "analyze") return CmdAnalyze(config, out);
    if (config.command == "verify") return CmdVerify(config, out);
    err << "error: unknown command '" << config.command << "'\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace svmweave::cli
