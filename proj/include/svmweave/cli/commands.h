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


#ifndef SVMWEAVE_CLI_COMMANDS_H_
#define SVMWEAVE_CLI_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svmweave/vm/interpreter.h"

namespace svmweave::cli {

// Everything a command may need. Optional settings left empty fall back to
// the config file, then to defaults.
struct RunConfig {
  std::string command;
  std::string input;
  std::optional<std::string> out;
  std::optional<std::string> scope;
  std::optional<std::vector<std::string>> transformers;
  std::optional<std::string> config_path;
  std::optional<std::string> property_path;
  std::optional<bool> dump_cfg;
  std::uint64_t seed = 0;
  std::int64_t fuel = vm::kDefaultFuel;
  // Entry arguments for `run`.
  std::vector<std::string> args;
  // Input vectors for `verify`, each "a,b,..".
  std::vector<std::string> inputs;
};

// Runs one command. Returns the exit status: 0 on success, 1 on errors
// (diagnostic on `err`), 2 when `run` traps, 3 when `verify` finds
// differing verdicts.
int RunCommand(const RunConfig& config, std::ostream& out, std::ostream& err);

// Integers become Int values, anything else a Str.
vm::Value ParseArgument(const std::string& text);

}  // namespace svmweave::cli

#endif  // SVMWEAVE_CLI_COMMANDS_H_
