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


#ifndef SVMWEAVE_TESTS_SUPPORT_RANDOM_PROGRAMS_H_
#define SVMWEAVE_TESTS_SUPPORT_RANDOM_PROGRAMS_H_

#include <random>
#include <string>
#include <vector>

#include "svmweave/automata/nfa.h"
#include "svmweave/automata/property.h"
#include "svmweave/vm/program.h"

namespace svmweave::testing {

using Rng = std::mt19937_64;

struct RandomProgramOptions {
  int max_instructions = 20;
  int max_conditionals = 3;
  // `call Ev.a 0` style event calls.
  bool events = true;
  // `call Val.f 1` calls that return a value.
  bool value_calls = false;
  // Probability of flagging each instruction hidden.
  double hide_probability = 0.0;
  bool annotate_log = false;
};

// A single method `Main.main` built from events, assignments, if/else,
// if-then and counter loops. Argument k feeds the k-th if; nargs is the
// number of ifs. Always terminates.
vm::Program RandomProgram(Rng& rng, const RandomProgramOptions& options = {});

// Assembly text of the same shape, before parsing.
std::string RandomProgramText(Rng& rng, const RandomProgramOptions& options);

// Every vector in {0,1}^nargs.
std::vector<std::vector<vm::Value>> AllInputs(int nargs);

// alphabet=a,b,c with event.x=before Ev.x.
automata::Property EventProperty(const std::string& bad);

// Random regex over single-character symbols, e.g. "a (b|c)* a".
std::string RandomRegex(Rng& rng, const std::string& symbols, int depth = 3);

// The same regex in ECMAScript syntax (spaces dropped).
std::string ToEcmaRegex(const std::string& regex);

// Random epsilon-NFA with up to `max_states` states.
automata::Nfa RandomNfa(Rng& rng, const std::vector<std::string>& alphabet,
                        int max_states);

// Random CFG-shaped automaton: one initial state, all states accepting, each
// state's outgoing transitions carry one symbol (or epsilon).
automata::Nfa RandomCfgAutomaton(Rng& rng,
                                 const std::vector<std::string>& alphabet,
                                 int max_states);

}  // namespace svmweave::testing

#endif  // SVMWEAVE_TESTS_SUPPORT_RANDOM_PROGRAMS_H_
