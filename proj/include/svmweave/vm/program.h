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

#ifndef SVMWEAVE_VM_PROGRAM_H_
#define SVMWEAVE_VM_PROGRAM_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace svmweave::vm {

// A tagged SVM value: either a signed 64-bit integer or an immutable string.
class Value {
 public:
  Value() : payload_(std::int64_t{0}) {}

  static Value Int(std::int64_t v) { return Value(v); }
  static Value Str(std::string s) { return Value(std::move(s)); }

  bool is_int() const { return std::holds_alternative<std::int64_t>(payload_); }
  bool is_str() const { return !is_int(); }
  std::int64_t as_int() const { return std::get<std::int64_t>(payload_); }
  const std::string& as_str() const { return std::get<std::string>(payload_); }

  // Ints in decimal, strings verbatim.
  std::string ToString() const;
  // Like ToString() but strings are quoted.
  std::string Repr() const;

  bool operator==(const Value&) const = default;

 private:
  explicit Value(std::int64_t v) : payload_(v) {}
  explicit Value(std::string s) : payload_(std::move(s)) {}

  std::variant<std::int64_t, std::string> payload_;
};

enum class Opcode {
  kConst,
  kPushs,
  kLoad,
  kStore,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kLt,
  kEq,
  kDup,
  kPop,
  kJmp,
  kJz,
  kCall,
  kRet,
  kRetv,
  kHalt,
};

std::string_view Mnemonic(Opcode op);
std::optional<Opcode> OpcodeFromMnemonic(std::string_view text);

// JMP, JZ
bool IsJump(Opcode op);
// RET, RETV, HALT
bool IsReturn(Opcode op);
// Ends a basic block: jumps and returns.
bool IsTransfer(Opcode op);
// Never falls through to the next instruction.
bool IsUnconditionalTransfer(Opcode op);

struct Instruction {
  Opcode opcode = Opcode::kHalt;
  // CONST literal, LOAD/STORE slot, JMP/JZ target index, CALL argument count.
  std::int64_t operand = 0;
  // PUSHS literal or CALL callee.
  std::string text;
  // Invisible to locators of subsequently applied transformers.
  bool hidden = false;
  // Inserted by a transformer.
  bool synthetic = false;

  static Instruction Const(std::int64_t v) { return {Opcode::kConst, v, {}}; }
  static Instruction Pushs(std::string s) {
    return {Opcode::kPushs, 0, std::move(s)};
  }
  static Instruction Load(std::int64_t slot) {
    return {Opcode::kLoad, slot, {}};
  }
  static Instruction Store(std::int64_t slot) {
    return {Opcode::kStore, slot, {}};
  }
  static Instruction Jmp(std::int64_t target) {
    return {Opcode::kJmp, target, {}};
  }
  static Instruction Jz(std::int64_t target) {
    return {Opcode::kJz, target, {}};
  }
  static Instruction Call(std::string callee, std::int64_t nargs) {
    return {Opcode::kCall, nargs, std::move(callee)};
  }
  static Instruction Op(Opcode op) { return {op, 0, {}}; }

  bool operator==(const Instruction&) const = default;
};

struct Method {
  std::string owner;
  std::string name;
  int nargs = 0;
  int nlocals = 0;
  // Stored without the leading '@'.
  std::set<std::string> annotations;
  std::vector<Instruction> body;
  bool is_extern = false;
  bool extern_returns = false;

  // "Owner.name", or just "name" when the owner is empty.
  std::string QualifiedName() const;
  bool IsAnnotated(std::string_view annotation) const;

  bool operator==(const Method&) const = default;
};

// Splits "a.b.C.m" into owner "a.b.C" and name "m".
std::pair<std::string, std::string> SplitQualifiedName(std::string_view qname);

// Methods are kept in declaration order and indexed by qualified name.
class Program {
 public:
  const std::vector<Method>& methods() const { return methods_; }

  const Method* Find(std::string_view qualified_name) const;
  Method* FindMutable(std::string_view qualified_name);

  // Throws ValidationError on a duplicate name.
  Method& AddMethod(Method method);

  // Empty entry means "first non-extern method".
  const std::string& entry() const { return entry_; }
  void set_entry(std::string entry) { entry_ = std::move(entry); }
  // Resolves the entry method name, applying the default rule.
  std::string EntryName() const;

  bool operator==(const Program& other) const {
    return methods_ == other.methods_ && EntryName() == other.EntryName();
  }

 private:
  std::vector<Method> methods_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string entry_;
};

// Whether a call to `callee` leaves a result on the caller's stack.
bool CalleeReturns(const Method& callee);

// Checks every structural invariant; throws ValidationError naming the first
// offending method and instruction.
void Validate(const Program& program);
void ValidateMethod(const Program& program, const Method& method);

}  // namespace svmweave::vm

#endif  // SVMWEAVE_VM_PROGRAM_H_
