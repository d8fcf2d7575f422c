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


#ifndef SVMWEAVE_ENGINE_CONFIG_H_
#define SVMWEAVE_ENGINE_CONFIG_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svmweave/support/glob.h"

namespace svmweave::engine {

// Comma-separated globs over qualified method names, e.g. "List.*,App.main".
// An empty pattern matches every method.
class ScopePattern {
 public:
  ScopePattern() = default;
  explicit ScopePattern(std::string_view spec);

  bool Matches(std::string_view qualified_name) const;
  const std::vector<std::string>& globs() const { return globs_; }

 private:
  std::vector<std::string> globs_;
};

// key=value settings; `#` starts a comment line. Unset keys stay empty so
// that layers (defaults < file < command line) can be merged.
struct Config {
  std::optional<std::string> scope;
  std::optional<std::vector<std::string>> transformers;
  std::optional<bool> dump_cfg;
  std::optional<std::string> out;
  // t.<name>.<key>=<value>
  std::map<std::string, std::map<std::string, std::string>> transformer_args;

  // Overwrites every setting that `higher` defines.
  void MergeFrom(const Config& higher);
};

// Throws ParseError on malformed lines or unknown keys.
Config ParseConfig(std::string_view text);

std::vector<std::string> SplitList(std::string_view text, char sep = ',');

}  // namespace svmweave::engine

#endif  // SVMWEAVE_ENGINE_CONFIG_H_
