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


#ifndef SVMWEAVE_STDLIB_INSTRUMENTATION_H_
#define SVMWEAVE_STDLIB_INSTRUMENTATION_H_

#include <string>

#include "svmweave/automata/cfg_automaton.h"
#include "svmweave/automata/nfa.h"
#include "svmweave/engine/transformer.h"

namespace svmweave::stdlib {

// Prints "Entering method: <qname>" / "Exiting method: <qname>" around
// methods carrying `annotation`.
engine::TransformerInstance LoggingTransformer(std::string annotation = "log");

// Invokes Timer.start(qname) on method enter and Timer.stop(qname) on exit.
engine::TransformerInstance TimerTransformer();

// Prints "block <qname> B<id>" whenever a basic block is entered.
engine::TransformerInstance BlockPrinterTransformer();

// Reports every rule-matched call through
// Monitor.emit(symbol, "<qname>@<instr>", "before"|"after").
engine::TransformerInstance EventExtractionTransformer(automata::EventSpec spec);

// Hidden transformer: hides the event calls that the residual plan of each
// method does not need. Weaves nothing. Reports one line per method:
// "residual method=<qname> eligible=yes|no keep=<i,..> hide=<i,..>".
engine::TransformerInstance ResidualAnalysisTransformer(automata::EventSpec spec,
                                                        automata::Nfa bad);

}  // namespace svmweave::stdlib

#endif  // SVMWEAVE_STDLIB_INSTRUMENTATION_H_
