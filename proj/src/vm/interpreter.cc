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

#include "svmweave/vm/interpreter.h"

#include <limits>
#include <utility>

#include "svmweave/support/error.h"

namespace svmweave::vm {

namespace {

constexpr std::size_t kMaxCallDepth = 4096;

struct Frame {
  const Method* method = nullptr;
  std::int64_t pc = 0;
  std::vector<Value> locals;
  std::vector<Value> stack;
};

// Signals a trap from deep inside the dispatch loop.
struct TrapSignal {
  TrapKind kind;
  std::string message;
};

std::int64_t Wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

class Machine {
 public:
  Machine(const Program& program, const HostRegistry& hosts, std::int64_t fuel)
      : program_(program), hosts_(hosts), fuel_(fuel) {}

  ExecResult Run(const Method& entry, std::span<const Value> args) {
    Push(entry, args);
    try {
      Loop();
    } catch (const TrapSignal& signal) {
      const Frame& top = frames_.back();
      result_.trap = Trap{signal.kind, signal.message,
                          top.method->QualifiedName(), top.pc};
      result_.return_value.reset();
    }
    return std::move(result_);
  }

 private:
  void Push(const Method& method, std::span<const Value> args) {
    Frame frame;
    frame.method = &method;
    frame.locals.resize(static_cast<std::size_t>(method.nlocals));
    for (std::size_t i = 0; i < args.size(); ++i) frame.locals[i] = args[i];
    frames_.push_back(std::move(frame));
  }

  static Value Pop(Frame& f) {
    if (f.stack.empty()) {
      throw TrapSignal{TrapKind::kStackUnderflow, "operand stack underflow"};
    }
    Value v = std::move(f.stack.back());
    f.stack.pop_back();
    return v;
  }

  static std::int64_t PopInt(Frame& f, Opcode op) {
    Value v = Pop(f);
    if (!v.is_int()) {
      throw TrapSignal{TrapKind::kTypeMismatch,
                       std::string(Mnemonic(op)) + " expects an integer"};
    }
    return v.as_int();
  }

  void Loop() {
    while (true) {
      Frame& f = frames_.back();
      if (result_.fuel_used >= fuel_) {
        throw TrapSignal{TrapKind::kFuelExhausted, "fuel exhausted"};
      }
      ++result_.fuel_used;
      const Instruction& ins = f.method->body[static_cast<std::size_t>(f.pc)];
      std::int64_t next = f.pc + 1;
      switch (ins.opcode) {
        case Opcode::kConst:
          f.stack.push_back(Value::Int(ins.operand));
          break;
        case Opcode::kPushs:
          f.stack.push_back(Value::Str(ins.text));
          break;
        case Opcode::kLoad:
          f.stack.push_back(f.locals[static_cast<std::size_t>(ins.operand)]);
          break;
        case Opcode::kStore:
          f.locals[static_cast<std::size_t>(ins.operand)] = Pop(f);
          break;
        case Opcode::kAdd:
        case Opcode::kSub:
        case Opcode::kMul:
        case Opcode::kDiv:
        case Opcode::kLt:
          f.stack.push_back(Value::Int(Arith(f, ins.opcode)));
          break;
        case Opcode::kEq: {
          Value b = Pop(f);
          Value a = Pop(f);
          f.stack.push_back(Value::Int(a == b ? 1 : 0));
          break;
        }
        case Opcode::kDup: {
          Value v = Pop(f);
          f.stack.push_back(v);
          f.stack.push_back(std::move(v));
          break;
        }
        case Opcode::kPop:
          Pop(f);
          break;
        case Opcode::kJmp:
          next = ins.operand;
          break;
        case Opcode::kJz:
          if (PopInt(f, ins.opcode) == 0) next = ins.operand;
          break;
        case Opcode::kCall:
          f.pc = next;
          Call(f, ins);
          continue;
        case Opcode::kRet:
        case Opcode::kRetv: {
          std::optional<Value> ret;
          if (ins.opcode == Opcode::kRetv) ret = Pop(f);
          frames_.pop_back();
          if (frames_.empty()) {
            result_.return_value = std::move(ret);
            return;
          }
          if (ret) frames_.back().stack.push_back(std::move(*ret));
          continue;
        }
        case Opcode::kHalt:
          return;
      }
      f.pc = next;
    }
  }

  std::int64_t Arith(Frame& f, Opcode op) {
    std::int64_t b = PopInt(f, op);
    std::int64_t a = PopInt(f, op);
    auto ua = static_cast<std::uint64_t>(a);
    auto ub = static_cast<std::uint64_t>(b);
    switch (op) {
      case Opcode::kAdd:
        return Wrap(ua + ub);
      case Opcode::kSub:
        return Wrap(ua - ub);
      case Opcode::kMul:
        return Wrap(ua * ub);
      case Opcode::kDiv:
        if (b == 0) {
          throw TrapSignal{TrapKind::kDivisionByZero, "division by zero"};
        }
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return a;
        return a / b;
      case Opcode::kLt:
        return a < b ? 1 : 0;
      default:
        return 0;
    }
  }

  void Call(Frame& caller, const Instruction& ins) {
    const Method* callee = program_.Find(ins.text);
    auto n = static_cast<std::size_t>(ins.operand);
    if (caller.stack.size() < n) {
      throw TrapSignal{TrapKind::kStackUnderflow,
                       "not enough arguments for " + ins.text};
    }
    std::vector<Value> args(caller.stack.end() - static_cast<std::ptrdiff_t>(n),
                            caller.stack.end());
    caller.stack.resize(caller.stack.size() - n);
    if (!callee->is_extern) {
      if (frames_.size() >= kMaxCallDepth) {
        throw TrapSignal{TrapKind::kCallDepth, "call depth limit exceeded"};
      }
      Push(*callee, args);
      return;
    }
    const HostFunction* host = hosts_.Find(ins.text);
    if (host == nullptr) {
      throw TrapSignal{TrapKind::kUnregisteredExtern,
                       "no host registered for " + ins.text};
    }
    result_.host_calls.push_back({ins.text, args});
    HostEnv env{result_.printed};
    std::optional<Value> ret = (*host)(args, env);
    if (callee->extern_returns) {
      frames_.back().stack.push_back(ret ? std::move(*ret) : Value::Int(0));
    }
  }

  const Program& program_;
  const HostRegistry& hosts_;
  std::int64_t fuel_;
  std::vector<Frame> frames_;
  ExecResult result_;
};

}  // namespace

std::string PrintExternName(int arity) {
  std::string name(kPrintExtern);
  return arity == 1 ? name : name + std::to_string(arity);
}

HostRegistry HostRegistry::Standard() {
  HostRegistry registry;
  for (int arity = 1; arity <= 8; ++arity) {
    registry.Register(PrintExternName(arity),
                      [](std::span<const Value> args, HostEnv& env) {
                        std::string line;
                        for (const Value& v : args) line += v.ToString();
                        env.printed.push_back(std::move(line));
                        return std::optional<Value>();
                      });
  }
  return registry;
}

void HostRegistry::Register(std::string name, HostFunction fn) {
  hosts_[std::move(name)] = std::move(fn);
}

const HostFunction* HostRegistry::Find(const std::string& name) const {
  auto it = hosts_.find(name);
  return it == hosts_.end() ? nullptr : &it->second;
}

void HostRegistry::RegisterStubs(const Program& program) {
  for (const Method& m : program.methods()) {
    if (!m.is_extern || Find(m.QualifiedName()) != nullptr) continue;
    std::string result = m.QualifiedName() + "()";
    bool returns = m.extern_returns;
    Register(m.QualifiedName(),
             [result, returns](std::span<const Value>,
                               HostEnv&) -> std::optional<Value> {
               if (!returns) return std::nullopt;
               return Value::Str(result);
             });
  }
}

std::string_view TrapKindName(TrapKind kind) {
  switch (kind) {
    case TrapKind::kStackUnderflow:
      return "stack-underflow";
    case TrapKind::kDivisionByZero:
      return "division-by-zero";
    case TrapKind::kFuelExhausted:
      return "fuel-exhausted";
    case TrapKind::kUnregisteredExtern:
      return "unregistered-extern";
    case TrapKind::kTypeMismatch:
      return "type-mismatch";
    case TrapKind::kCallDepth:
      return "call-depth";
  }
  return "unknown";
}

ExecResult Execute(const Program& program, std::span<const Value> args,
                   const HostRegistry& hosts, std::int64_t fuel) {
  const Method* entry = program.Find(program.EntryName());
  if (entry == nullptr || entry->is_extern) {
    throw Error("program has no executable entry method");
  }
  if (static_cast<int>(args.size()) != entry->nargs) {
    throw Error("entry " + entry->QualifiedName() + " expects " +
                std::to_string(entry->nargs) + " argument(s), got " +
                std::to_string(args.size()));
  }
  return Machine(program, hosts, fuel).Run(*entry, args);
}

}  // namespace svmweave::vm
