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

#ifndef SVMWEAVE_VM_INTERPRETER_H_
#define SVMWEAVE_VM_INTERPRETER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svmweave/vm/program.h"

namespace svmweave::vm {

inline constexpr std::int64_t kDefaultFuel = 1'000'000;

// Name prefix of the printing externs: `Sys.print` takes one argument,
// `Sys.printN` (N in 2..8) takes N and prints their concatenation.
inline constexpr std::string_view kPrintExtern = "Sys.print";

// Output channel handed to host functions.
struct HostEnv {
  std::vector<std::string>& printed;
};

using HostFunction = std::function<std::optional<Value>(
    std::span<const Value> args, HostEnv& env)>;

// Maps extern names to host implementations.
class HostRegistry {
 public:
  // Registers Sys.print and Sys.print2..Sys.print8.
  static HostRegistry Standard();

  void Register(std::string name, HostFunction fn);
  const HostFunction* Find(const std::string& name) const;

  // For every extern of `program` without a host, registers a stub that
  // returns Str("<callee>()") when the extern declares a result.
  void RegisterStubs(const Program& program);

 private:
  std::map<std::string, HostFunction, std::less<>> hosts_;
};

// Name of the print extern for `arity` arguments.
std::string PrintExternName(int arity);

enum class TrapKind {
  kStackUnderflow,
  kDivisionByZero,
  kFuelExhausted,
  kUnregisteredExtern,
  kTypeMismatch,
  kCallDepth,
};

std::string_view TrapKindName(TrapKind kind);

struct Trap {
  TrapKind kind;
  std::string message;
  std::string method;
  std::int64_t pc = 0;

  bool operator==(const Trap&) const = default;
};

struct HostCall {
  std::string callee;
  std::vector<Value> args;

  bool operator==(const HostCall&) const = default;
};

struct ExecResult {
  std::optional<Value> return_value;
  std::vector<HostCall> host_calls;
  std::vector<std::string> printed;
  std::optional<Trap> trap;
  std::int64_t fuel_used = 0;

  bool operator==(const ExecResult&) const = default;
};

// Runs the entry method of a validated program. Hidden and synthetic flags
// do not influence execution. Throws svmweave::Error when `args` does not
// match the entry arity.
ExecResult Execute(const Program& program, std::span<const Value> args,
                   const HostRegistry& hosts,
                   std::int64_t fuel = kDefaultFuel);

}  // namespace svmweave::vm

#endif  // SVMWEAVE_VM_INTERPRETER_H_
