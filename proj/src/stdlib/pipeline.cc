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


#include "svmweave/stdlib/pipeline.h"

#include "svmweave/stdlib/instrumentation.h"

namespace svmweave::stdlib {

engine::WeaveResult InstrumentEvents(const vm::Program& program,
                                     const automata::Property& property,
                                     bool residual,
                                     const engine::WeaveOptions& options) {
  std::vector<engine::TransformerInstance> ts;
  if (residual) {
    ts.push_back(
        ResidualAnalysisTransformer(property.spec, property.BadAutomaton()));
  }
  ts.push_back(EventExtractionTransformer(property.spec));
  return engine::ApplyTransformers(program, ts, options);
}

vm::HostRegistry MonitoringHosts(const vm::Program& program) {
  vm::HostRegistry hosts = vm::HostRegistry::Standard();
  monitor::RegisterMonitorHost(hosts);
  hosts.RegisterStubs(program);
  return hosts;
}

MonitoredRun RunMonitored(const vm::Program& woven,
                          std::span<const vm::Value> args,
                          const automata::Property& property,
                          std::int64_t fuel) {
  MonitoredRun run;
  run.exec = vm::Execute(woven, args, MonitoringHosts(woven), fuel);
  run.trace = monitor::TraceFromExecution(run.exec, property.spec);
  monitor::Monitor m(property.BadAutomaton());
  run.verdict = m.RunTrace(run.trace);
  return run;
}

}  // namespace svmweave::stdlib
