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

#include "svmweave/vm/program.h"

#include <array>
#include <utility>

#include "svmweave/support/error.h"

namespace svmweave::vm {

namespace {

constexpr std::array<std::pair<Opcode, std::string_view>, 18> kMnemonics = {{
    {Opcode::kConst, "const"},
    {Opcode::kPushs, "pushs"},
    {Opcode::kLoad, "load"},
    {Opcode::kStore, "store"},
    {Opcode::kAdd, "add"},
    {Opcode::kSub, "sub"},
    {Opcode::kMul, "mul"},
    {Opcode::kDiv, "div"},
    {Opcode::kLt, "lt"},
    {Opcode::kEq, "eq"},
    {Opcode::kDup, "dup"},
    {Opcode::kPop, "pop"},
    {Opcode::kJmp, "jmp"},
    {Opcode::kJz, "jz"},
    {Opcode::kCall, "call"},
    {Opcode::kRet, "ret"},
    {Opcode::kRetv, "retv"},
    {Opcode::kHalt, "halt"},
}};

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

[[noreturn]] void Fail(const Method& m, std::size_t index,
                       const std::string& what) {
  throw ValidationError(m.QualifiedName() + "@" + std::to_string(index) +
                        ": " + what);
}

}  // namespace

std::string Value::ToString() const {
  return is_int() ? std::to_string(as_int()) : as_str();
}

std::string Value::Repr() const {
  return is_int() ? std::to_string(as_int()) : Quote(as_str());
}

std::string_view Mnemonic(Opcode op) {
  for (const auto& [code, text] : kMnemonics) {
    if (code == op) return text;
  }
  return "?";
}

std::optional<Opcode> OpcodeFromMnemonic(std::string_view text) {
  for (const auto& [code, name] : kMnemonics) {
    if (name == text) return code;
  }
  return std::nullopt;
}

bool IsJump(Opcode op) { return op == Opcode::kJmp || op == Opcode::kJz; }

bool IsReturn(Opcode op) {
  return op == Opcode::kRet || op == Opcode::kRetv || op == Opcode::kHalt;
}

bool IsTransfer(Opcode op) { return IsJump(op) || IsReturn(op); }

bool IsUnconditionalTransfer(Opcode op) {
  return op == Opcode::kJmp || IsReturn(op);
}

std::string Method::QualifiedName() const {
  return owner.empty() ? name : owner + "." + name;
}

bool Method::IsAnnotated(std::string_view annotation) const {
  if (!annotation.empty() && annotation.front() == '@') {
    annotation.remove_prefix(1);
  }
  return annotations.count(std::string(annotation)) > 0;
}

std::pair<std::string, std::string> SplitQualifiedName(std::string_view qname) {
  auto dot = qname.rfind('.');
  if (dot == std::string_view::npos) return {"", std::string(qname)};
  return {std::string(qname.substr(0, dot)), std::string(qname.substr(dot + 1))};
}

const Method* Program::Find(std::string_view qualified_name) const {
  auto it = index_.find(std::string(qualified_name));
  return it == index_.end() ? nullptr : &methods_[it->second];
}

Method* Program::FindMutable(std::string_view qualified_name) {
  auto it = index_.find(std::string(qualified_name));
  return it == index_.end() ? nullptr : &methods_[it->second];
}

Method& Program::AddMethod(Method method) {
  std::string qname = method.QualifiedName();
  if (index_.count(qname) > 0) {
    throw ValidationError("duplicate method name " + qname);
  }
  index_.emplace(qname, methods_.size());
  methods_.push_back(std::move(method));
  return methods_.back();
}

std::string Program::EntryName() const {
  if (!entry_.empty()) return entry_;
  for (const Method& m : methods_) {
    if (!m.is_extern) return m.QualifiedName();
  }
  return {};
}

bool CalleeReturns(const Method& callee) {
  if (callee.is_extern) return callee.extern_returns;
  for (const Instruction& ins : callee.body) {
    if (ins.opcode == Opcode::kRetv) return true;
  }
  return false;
}

void ValidateMethod(const Program& program, const Method& m) {
  if (m.is_extern) {
    if (!m.body.empty()) Fail(m, 0, "extern method has a body");
    return;
  }
  if (m.nargs < 0 || m.nlocals < m.nargs) {
    Fail(m, 0, "local count smaller than argument count");
  }
  if (m.body.empty()) Fail(m, 0, "empty body");
  if (!IsUnconditionalTransfer(m.body.back().opcode)) {
    Fail(m, m.body.size() - 1, "control falls off the end of the method");
  }
  const auto size = static_cast<std::int64_t>(m.body.size());
  for (std::size_t i = 0; i < m.body.size(); ++i) {
    const Instruction& ins = m.body[i];
    switch (ins.opcode) {
      case Opcode::kLoad:
      case Opcode::kStore:
        if (ins.operand < 0 || ins.operand >= m.nlocals) {
          Fail(m, i, "slot " + std::to_string(ins.operand) + " out of range");
        }
        break;
      case Opcode::kJmp:
      case Opcode::kJz:
        if (ins.operand < 0 || ins.operand >= size) {
          Fail(m, i, "jump target " + std::to_string(ins.operand) +
                         " out of range");
        }
        break;
      case Opcode::kCall: {
        const Method* callee = program.Find(ins.text);
        if (callee == nullptr) Fail(m, i, "unknown callee " + ins.text);
        if (ins.operand < 0 || ins.operand != callee->nargs) {
          Fail(m, i, "call to " + ins.text + " passes " +
                         std::to_string(ins.operand) + " arguments, expected " +
                         std::to_string(callee->nargs));
        }
        break;
      }
      default:
        break;
    }
  }
}

void Validate(const Program& program) {
  std::string entry = program.EntryName();
  const Method* entry_method = program.Find(entry);
  if (entry_method == nullptr) {
    throw ValidationError("entry method '" + entry + "' does not resolve");
  }
  if (entry_method->is_extern) {
    throw ValidationError("entry method '" + entry + "' is extern");
  }
  for (const Method& m : program.methods()) ValidateMethod(program, m);
}

}  // namespace svmweave::vm
