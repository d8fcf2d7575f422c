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


#ifndef SVMWEAVE_STDLIB_METRICS_H_
#define SVMWEAVE_STDLIB_METRICS_H_

#include <string>
#include <vector>

#include "svmweave/engine/transformer.h"
#include "svmweave/vm/program.h"

namespace svmweave::stdlib {

// Counters gathered while one method is traversed; reset on method enter.
struct MetricsAccumulator {
  int edge_number = 0;
  int block_count = 0;
  int a = 0;  // assignments: STORE
  int b = 0;  // branches: CALL, JMP, JZ
  int c = 0;  // conditionals: CONDJUMP blocks
  std::vector<bool> unused;

  void Reset(int nlocals);
  int McCabe() const { return edge_number - block_count + 2; }
  double Abc() const;
  int UnusedVars() const;
};

// Direct computations on the method's CFG; the transformers below must agree
// with them.
int McCabe(const vm::Method& m);
double Abc(const vm::Method& m);
int UnusedVars(const vm::Method& m);
int CallCount(const vm::Method& m);

// "metric=<name> method=<qname> value=<v>"
std::string MetricLine(const std::string& name, const std::string& method,
                       const std::string& value);
std::string FormatMetric(double v);

engine::TransformerInstance McCabeTransformer();
engine::TransformerInstance AbcTransformer();
engine::TransformerInstance UnusedVarsTransformer();
engine::TransformerInstance CallCounterTransformer();

}  // namespace svmweave::stdlib

#endif  // SVMWEAVE_STDLIB_METRICS_H_
