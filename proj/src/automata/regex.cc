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


#include "svmweave/automata/regex.h"

#include <cctype>

#include "svmweave/support/error.h"

namespace svmweave::automata {

namespace {

struct Fragment {
  int start;
  int accept;
};

class RegexCompiler {
 public:
  RegexCompiler(std::string_view text, const std::vector<std::string>& alphabet)
      : text_(text), nfa_(alphabet) {}

  Nfa Run() {
    SkipSpace();
    if (pos_ == text_.size()) throw RegexError(0, "empty expression");
    Fragment f = Expr();
    SkipSpace();
    if (pos_ != text_.size()) {
      throw RegexError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    nfa_.AddInitial(f.start);
    nfa_.SetAccepting(f.accept);
    return std::move(nfa_);
  }

 private:
  static bool IsIdent(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
           c == '$';
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool AtTermEnd() {
    SkipSpace();
    return pos_ == text_.size() || text_[pos_] == '|' || text_[pos_] == ')';
  }

  Fragment Expr() {
    Fragment f = Term();
    while (true) {
      SkipSpace();
      if (pos_ == text_.size() || text_[pos_] != '|') return f;
      ++pos_;
      Fragment g = Term();
      int s = nfa_.AddState();
      int a = nfa_.AddState();
      nfa_.AddEpsilon(s, f.start);
      nfa_.AddEpsilon(s, g.start);
      nfa_.AddEpsilon(f.accept, a);
      nfa_.AddEpsilon(g.accept, a);
      f = {s, a};
    }
  }

  Fragment Term() {
    if (AtTermEnd()) throw RegexError(pos_, "expected a symbol or '('");
    Fragment f = Factor();
    while (!AtTermEnd()) {
      Fragment g = Factor();
      nfa_.AddEpsilon(f.accept, g.start);
      f.accept = g.accept;
    }
    return f;
  }

  Fragment Factor() {
    Fragment f = Atom();
    while (true) {
      SkipSpace();
      if (pos_ == text_.size()) return f;
      char c = text_[pos_];
      if (c != '*' && c != '+' && c != '?') return f;
      ++pos_;
      int s = nfa_.AddState();
      int a = nfa_.AddState();
      nfa_.AddEpsilon(s, f.start);
      nfa_.AddEpsilon(f.accept, a);
      if (c != '+') nfa_.AddEpsilon(s, a);
      if (c != '?') nfa_.AddEpsilon(f.accept, f.start);
      f = {s, a};
    }
  }

  Fragment Atom() {
    SkipSpace();
    std::size_t at = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      SkipSpace();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        throw RegexError(pos_, "empty group");
      }
      Fragment f = Expr();
      SkipSpace();
      if (pos_ == text_.size() || text_[pos_] != ')') {
        throw RegexError(pos_, "missing ')'");
      }
      ++pos_;
      return f;
    }
    if (!IsIdent(text_[pos_])) {
      throw RegexError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    while (pos_ < text_.size() && IsIdent(text_[pos_])) ++pos_;
    std::string name(text_.substr(at, pos_ - at));
    if (auto index = nfa_.SymbolIndex(name)) return Symbol(*index);
    // Juxtaposed single-character symbols: take one character at a time.
    auto first = nfa_.SymbolIndex(name.substr(0, 1));
    bool all_single = true;
    for (char c : name) {
      all_single = all_single && nfa_.SymbolIndex(std::string(1, c)).has_value();
    }
    if (!first || !all_single) {
      throw RegexError(at, "unknown symbol '" + name + "'");
    }
    pos_ = at + 1;
    return Symbol(*first);
  }

  Fragment Symbol(int index) {
    int s = nfa_.AddState();
    int a = nfa_.AddState();
    nfa_.AddTransition(s, index, a);
    return {s, a};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Nfa nfa_;
};

}  // namespace

Nfa CompileRegex(std::string_view regex,
                 const std::vector<std::string>& alphabet) {
  return RegexCompiler(regex, alphabet).Run();
}

}  // namespace svmweave::automata
