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

#include "svmweave/vm/assembler.h"

#include <charconv>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <vector>

#include "svmweave/support/error.h"

namespace svmweave::vm {

namespace {

struct Line {
  int number;
  std::string code;  // comment stripped, trimmed
  bool synthetic = false;
  bool hidden = false;
};

std::string Trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

// Splits off a `;` comment that is not inside a string literal.
Line StripComment(int number, std::string_view raw) {
  Line line{number, {}};
  bool in_string = false;
  std::size_t cut = raw.size();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
    } else if (c == '"') {
      in_string = true;
    } else if (c == ';') {
      cut = i;
      break;
    }
  }
  std::string_view comment = raw.substr(cut);
  line.synthetic = comment.find(";#syn") != std::string_view::npos;
  line.hidden = comment.find(";#hid") != std::string_view::npos;
  line.code = Trim(raw.substr(0, cut));
  return line;
}

std::int64_t ParseInt(const Line& line, std::string_view token) {
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line.number, "expected an integer, got '" +
                                      std::string(token) + "'");
  }
  return value;
}

std::string ParseStringLiteral(const Line& line, std::string_view text) {
  if (text.size() < 2 || text.front() != '"' || text.back() != '"') {
    throw ParseError(line.number, "expected a string literal");
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    char c = text[i];
    if (c == '"') throw ParseError(line.number, "unescaped quote");
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 2 >= text.size()) {
      throw ParseError(line.number, "dangling escape in string literal");
    }
    char e = text[++i];
    switch (e) {
      case 'n':
        out += '\n';
        break;
      case 't':
        out += '\t';
        break;
      case '"':
      case '\\':
        out += e;
        break;
      default:
        throw ParseError(line.number,
                         std::string("unknown escape \\") + e);
    }
  }
  return out;
}

std::vector<std::string> SplitWords(std::string_view s) {
  std::vector<std::string> words;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

struct PendingJump {
  std::size_t instruction;
  std::string label;
  int line;
};

class Parser {
 public:
  Program Run(std::string_view source) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
      auto nl = source.find('\n', pos);
      if (nl == std::string_view::npos) nl = source.size();
      ++number;
      ParseLine(StripComment(number, source.substr(pos, nl - pos)));
      pos = nl + 1;
    }
    FinishMethod();
    Validate(program_);
    return std::move(program_);
  }

 private:
  void ParseLine(const Line& line) {
    if (line.code.empty()) return;
    static const std::regex kEntry(R"(^entry\s+([A-Za-z_$][\w.$]*)$)");
    static const std::regex kExtern(
        R"(^extern\s+([A-Za-z_$][\w.$]*)\s*\(\s*(\d+)\s*\)\s*(returns)?$)");
    static const std::regex kFunc(
        R"(^func\s+([A-Za-z_$][\w.$]*)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)((?:\s+@[\w.$]+)*)\s*:(.*)$)");
    static const std::regex kLabel(R"(^([A-Za-z_$][\w.$]*)\s*:$)");
    std::smatch m;
    if (std::regex_match(line.code, m, kEntry)) {
      if (!program_.entry().empty()) {
        throw ParseError(line.number, "duplicate entry directive");
      }
      program_.set_entry(m[1]);
      return;
    }
    if (std::regex_match(line.code, m, kExtern)) {
      FinishMethod();
      Method method;
      std::tie(method.owner, method.name) = SplitQualifiedName(m[1].str());
      method.nargs = static_cast<int>(ParseInt(line, m[2].str()));
      method.nlocals = method.nargs;
      method.is_extern = true;
      method.extern_returns = m[3].matched;
      AddMethod(line, std::move(method));
      return;
    }
    if (std::regex_match(line.code, m, kFunc)) {
      FinishMethod();
      Method method;
      std::tie(method.owner, method.name) = SplitQualifiedName(m[1].str());
      method.nargs = static_cast<int>(ParseInt(line, m[2].str()));
      method.nlocals = static_cast<int>(ParseInt(line, m[3].str()));
      for (const std::string& anno : SplitWords(m[4].str())) {
        method.annotations.insert(anno.substr(1));
      }
      if (method.nlocals < method.nargs) {
        throw ParseError(line.number, "nlocals smaller than nargs");
      }
      current_ = std::move(method);
      current_line_ = line.number;
      std::string trailing = Trim(m[5].str());
      if (!trailing.empty()) {
        Line inline_ins = line;
        inline_ins.code = trailing;
        ParseInstruction(inline_ins);
      }
      return;
    }
    if (!current_) {
      throw ParseError(line.number, "instruction outside of a func");
    }
    if (std::regex_match(line.code, m, kLabel)) {
      std::string label = m[1];
      if (labels_.count(label) > 0) {
        throw ParseError(line.number, "duplicate label '" + label + "'");
      }
      labels_[label] = current_->body.size();
      label_lines_[label] = line.number;
      return;
    }
    ParseInstruction(line);
  }

  void ParseInstruction(const Line& line) {
    std::string_view code = line.code;
    auto space = code.find_first_of(" \t");
    std::string mnemonic(code.substr(0, space));
    std::string rest =
        space == std::string_view::npos ? "" : Trim(code.substr(space));
    auto op = OpcodeFromMnemonic(mnemonic);
    if (!op) throw ParseError(line.number, "unknown opcode '" + mnemonic + "'");

    Instruction ins = Instruction::Op(*op);
    ins.synthetic = line.synthetic;
    ins.hidden = line.hidden;
    std::vector<std::string> words = SplitWords(rest);
    auto expect_words = [&](std::size_t n) {
      if (words.size() != n) {
        throw ParseError(line.number, "'" + mnemonic + "' takes " +
                                          std::to_string(n) + " operand(s)");
      }
    };
    switch (*op) {
      case Opcode::kConst:
        expect_words(1);
        ins.operand = ParseInt(line, words[0]);
        break;
      case Opcode::kPushs:
        ins.text = ParseStringLiteral(line, rest);
        break;
      case Opcode::kLoad:
      case Opcode::kStore:
        expect_words(1);
        ins.operand = ParseInt(line, words[0]);
        if (ins.operand < 0 || ins.operand >= current_->nlocals) {
          throw ParseError(line.number, "slot " + words[0] + " out of range");
        }
        break;
      case Opcode::kJmp:
      case Opcode::kJz:
        expect_words(1);
        pending_.push_back({current_->body.size(), words[0], line.number});
        break;
      case Opcode::kCall:
        expect_words(2);
        ins.text = words[0];
        ins.operand = ParseInt(line, words[1]);
        if (ins.operand < 0) {
          throw ParseError(line.number, "negative argument count");
        }
        break;
      default:
        expect_words(0);
    }
    current_->body.push_back(std::move(ins));
  }

  void FinishMethod() {
    if (!current_) return;
    for (const auto& [label, index] : labels_) {
      if (index >= current_->body.size()) {
        throw ParseError(label_lines_[label],
                         "label '" + label + "' does not precede an instruction");
      }
    }
    for (const PendingJump& jump : pending_) {
      auto it = labels_.find(jump.label);
      if (it == labels_.end()) {
        throw ParseError(jump.line, "unresolved label '" + jump.label + "'");
      }
      current_->body[jump.instruction].operand =
          static_cast<std::int64_t>(it->second);
    }
    AddMethod(current_line_, std::move(*current_));
    current_.reset();
    labels_.clear();
    label_lines_.clear();
    pending_.clear();
  }

  void AddMethod(const Line& line, Method method) {
    AddMethod(line.number, std::move(method));
  }

  void AddMethod(int line, Method method) {
    if (program_.Find(method.QualifiedName()) != nullptr) {
      throw ParseError(line,
                       "duplicate method name " + method.QualifiedName());
    }
    program_.AddMethod(std::move(method));
  }

  Program program_;
  std::optional<Method> current_;
  int current_line_ = 0;
  std::map<std::string, std::size_t> labels_;
  std::map<std::string, int> label_lines_;
  std::vector<PendingJump> pending_;
};

}  // namespace

Program ParseProgram(std::string_view source) { return Parser().Run(source); }

std::string FormatInstruction(const Instruction& ins) {
  std::string out(Mnemonic(ins.opcode));
  switch (ins.opcode) {
    case Opcode::kConst:
    case Opcode::kLoad:
    case Opcode::kStore:
      out += " " + std::to_string(ins.operand);
      break;
    case Opcode::kPushs:
      out += " " + Value::Str(ins.text).Repr();
      break;
    case Opcode::kJmp:
    case Opcode::kJz:
      out += " L" + std::to_string(ins.operand);
      break;
    case Opcode::kCall:
      out += " " + ins.text + " " + std::to_string(ins.operand);
      break;
    default:
      break;
  }
  return out;
}

std::string SerializeProgram(const Program& program) {
  std::ostringstream out;
  std::string first_func;
  for (const Method& m : program.methods()) {
    if (!m.is_extern) {
      first_func = m.QualifiedName();
      break;
    }
  }
  if (program.EntryName() != first_func) {
    out << "entry " << program.EntryName() << "\n";
  }
  bool first = true;
  for (const Method& m : program.methods()) {
    if (!first && !m.is_extern) out << "\n";
    first = false;
    if (m.is_extern) {
      out << "extern " << m.QualifiedName() << "(" << m.nargs << ")"
          << (m.extern_returns ? " returns" : "") << "\n";
      continue;
    }
    out << "func " << m.QualifiedName() << "(" << m.nargs << "," << m.nlocals
        << ")";
    for (const std::string& anno : m.annotations) out << " @" << anno;
    out << ":\n";
    std::set<std::int64_t> targets;
    for (const Instruction& ins : m.body) {
      if (IsJump(ins.opcode)) targets.insert(ins.operand);
    }
    for (std::size_t i = 0; i < m.body.size(); ++i) {
      if (targets.count(static_cast<std::int64_t>(i)) > 0) {
        out << "L" << i << ":\n";
      }
      const Instruction& ins = m.body[i];
      out << "  " << FormatInstruction(ins);
      if (ins.synthetic) out << " ;#syn";
      if (ins.hidden) out << " ;#hid";
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace svmweave::vm
