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


#ifndef SVMWEAVE_STDLIB_PIPELINE_H_
#define SVMWEAVE_STDLIB_PIPELINE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "svmweave/automata/property.h"
#include "svmweave/engine/weaver.h"
#include "svmweave/monitor/monitor.h"
#include "svmweave/vm/interpreter.h"

namespace svmweave::stdlib {

// Event extraction alone (full) or preceded by the residual analysis.
engine::WeaveResult InstrumentEvents(const vm::Program& program,
                                     const automata::Property& property,
                                     bool residual,
                                     const engine::WeaveOptions& options = {});

// Standard hosts, the monitor host and stubs for the remaining externs.
vm::HostRegistry MonitoringHosts(const vm::Program& program);

struct MonitoredRun {
  vm::ExecResult exec;
  std::vector<monitor::Event> trace;
  monitor::Verdict verdict = monitor::Verdict::kUnknown;
};

// Executes an instrumented program and feeds its events to a bad-prefix
// monitor for `property`.
MonitoredRun RunMonitored(const vm::Program& woven,
                          std::span<const vm::Value> args,
                          const automata::Property& property,
                          std::int64_t fuel = vm::kDefaultFuel);

}  // namespace svmweave::stdlib

#endif  // SVMWEAVE_STDLIB_PIPELINE_H_
