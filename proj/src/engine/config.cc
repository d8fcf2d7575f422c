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


#include "svmweave/engine/config.h"

#include "svmweave/support/error.h"

namespace svmweave::engine {

namespace {

std::string Trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

std::vector<std::string> SplitList(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(sep, pos);
    if (next == std::string_view::npos) next = text.size();
    std::string item = Trim(text.substr(pos, next - pos));
    if (!item.empty()) out.push_back(std::move(item));
    pos = next + 1;
  }
  return out;
}

ScopePattern::ScopePattern(std::string_view spec) : globs_(SplitList(spec)) {}

bool ScopePattern::Matches(std::string_view qualified_name) const {
  if (globs_.empty()) return true;
  for (const std::string& g : globs_) {
    if (GlobMatch(g, qualified_name)) return true;
  }
  return false;
}

void Config::MergeFrom(const Config& higher) {
  if (higher.scope) scope = higher.scope;
  if (higher.transformers) transformers = higher.transformers;
  if (higher.dump_cfg) dump_cfg = higher.dump_cfg;
  if (higher.out) out = higher.out;
  for (const auto& [name, args] : higher.transformer_args) {
    for (const auto& [key, value] : args) transformer_args[name][key] = value;
  }
}

Config ParseConfig(std::string_view text) {
  Config config;
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
    if (eq == std::string::npos) {
      throw ParseError(number, "expected key=value");
    }
    std::string key = Trim(std::string_view(line).substr(0, eq));
    std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (key == "scope") {
      config.scope = value;
    } else if (key == "transformers") {
      config.transformers = SplitList(value);
    } else if (key == "dumpCfg") {
      if (value != "true" && value != "false") {
        throw ParseError(number, "dumpCfg must be true or false");
      }
      config.dump_cfg = value == "true";
    } else if (key == "out") {
      config.out = value;
    } else if (key.rfind("t.", 0) == 0) {
      auto dot = key.find('.', 2);
      if (dot == std::string::npos || dot == 2 || dot + 1 == key.size()) {
        throw ParseError(number, "expected t.<transformer>.<key>");
      }
      config.transformer_args[key.substr(2, dot - 2)][key.substr(dot + 1)] =
          value;
    } else {
      throw ParseError(number, "unknown key '" + key + "'");
    }
  }
  return config;
}

}  // namespace svmweave::engine
