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


#include "svmweave/automata/property.h"

#include <algorithm>
#include <sstream>
#include <vector>

#include "svmweave/automata/regex.h"
#include "svmweave/support/error.h"

namespace svmweave::automata {

namespace {

std::string Trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

struct PendingRule {
  int line;
  EventRule rule;
};

}  // namespace

Nfa Property::BadAutomaton() const { return CompileRegex(bad, spec.alphabet); }

Property ParseProperty(std::string_view text) {
  Property p;
  bool have_bad = false;
  bool have_alphabet = false;
  std::vector<PendingRule> rules;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++number;
    std::string line = Trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected key=value");
    std::string key = Trim(std::string_view(line).substr(0, eq));
    std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (key == "alphabet") {
      std::istringstream in(value);
      std::string symbol;
      while (std::getline(in, symbol, ',')) {
        symbol = Trim(symbol);
        if (symbol.empty()) throw ParseError(number, "empty symbol");
        if (std::count(p.spec.alphabet.begin(), p.spec.alphabet.end(), symbol)) {
          throw ParseError(number, "duplicate symbol '" + symbol + "'");
        }
        p.spec.alphabet.push_back(symbol);
      }
      have_alphabet = true;
    } else if (key.rfind("event.", 0) == 0) {
      std::istringstream in(value);
      std::string direction, callee, extra;
      in >> direction >> callee;
      if (callee.empty() || (in >> extra) ||
          (direction != "before" && direction != "after")) {
        throw ParseError(number, "expected 'before|after <callee>'");
      }
      EventRule rule;
      rule.symbol = key.substr(6);
      rule.callee_pattern = callee;
      rule.direction = direction == "before" ? EventDirection::kBefore
                                             : EventDirection::kAfter;
      rules.push_back({number, std::move(rule)});
    } else if (key == "bad") {
      if (value.empty()) throw ParseError(number, "empty bad expression");
      p.bad = value;
      have_bad = true;
    } else {
      throw ParseError(number, "unknown key '" + key + "'");
    }
  }
  if (!have_alphabet || p.spec.alphabet.empty()) {
    throw ParseError(0, "property has no alphabet");
  }
  if (!have_bad) throw ParseError(0, "property has no bad expression");
  for (PendingRule& r : rules) {
    const auto& a = p.spec.alphabet;
    if (std::find(a.begin(), a.end(), r.rule.symbol) == a.end()) {
      throw ParseError(r.line, "symbol '" + r.rule.symbol + "' not in alphabet");
    }
    p.spec.rules.push_back(std::move(r.rule));
  }
  return p;
}

}  // namespace svmweave::automata
