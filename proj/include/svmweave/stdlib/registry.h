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


#ifndef SVMWEAVE_STDLIB_REGISTRY_H_
#define SVMWEAVE_STDLIB_REGISTRY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "svmweave/automata/property.h"
#include "svmweave/engine/transformer.h"

namespace svmweave::stdlib {

struct TransformerOptions {
  // Required by event_extraction and residual_analysis.
  std::optional<automata::Property> property;
  std::uint64_t seed = 0;
};

// Names accepted by MakeTransformer, in a stable order.
std::vector<std::string> TransformerNames();

// Builds a stdlib transformer by name. `args` come from `t.<name>.<key>`
// config lines. Throws Error for an unknown name, an unknown or malformed
// argument, or a missing property.
engine::TransformerInstance MakeTransformer(
    const std::string& name, const std::map<std::string, std::string>& args,
    const TransformerOptions& options);

}  // namespace svmweave::stdlib

#endif  // SVMWEAVE_STDLIB_REGISTRY_H_
