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


#include <iostream>

#include <CLI11.hpp>

#include "svmweave/cli/commands.h"
#include "svmweave/engine/config.h"

namespace {

using svmweave::cli::RunConfig;

struct Flags {
  std::string out;
  std::string scope;
  std::string transformers;
  std::string config;
  std::string property;
  bool dump_cfg = false;
};

void AddCommon(CLI::App* sub, RunConfig& c, Flags& f) {
  sub->add_option("file", c.input, "SVM assembly file")->required();
  sub->add_option("--out,-o", f.out, "output file");
  sub->add_option("--scope", f.scope, "comma-separated Owner.method globs");
  sub->add_option("--config", f.config, "key=value config file");
  sub->add_option("--property", f.property, "property file");
  sub->add_flag("--dump-cfg", f.dump_cfg, "write DOT graphs");
  sub->add_option("--seed", c.seed, "seed for random mutators");
  sub->add_option("--fuel", c.fuel, "instruction budget per execution");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svmweave: instrumentation and residual monitoring for SVM programs"};
  app.require_subcommand(1);
  RunConfig c;
  Flags f;

  auto* assemble = app.add_subcommand("assemble", "parse, validate and reprint");
  AddCommon(assemble, c, f);
  auto* run = app.add_subcommand("run", "execute the entry method");
  AddCommon(run, c, f);
  run->add_option("args", c.args, "entry arguments");
  auto* instrument = app.add_subcommand("instrument", "apply transformers");
  AddCommon(instrument, c, f);
  instrument->add_option("--transformers,-t", f.transformers,
                         "comma-separated transformer list");
  auto* analyze = app.add_subcommand("analyze", "residual analysis report");
  AddCommon(analyze, c, f);
  auto* verify = app.add_subcommand("verify", "compare full and residual verdicts");
  AddCommon(verify, c, f);
  verify->add_option("--input", c.inputs, "entry arguments, e.g. 1,0");

  CLI11_PARSE(app, argc, argv);

  c.command = app.get_subcommands().front()->get_name();
  if (!f.out.empty()) c.out = f.out;
  if (!f.scope.empty()) c.scope = f.scope;
  if (!f.config.empty()) c.config_path = f.config;
  if (!f.property.empty()) c.property_path = f.property;
  if (!f.transformers.empty()) {
    c.transformers = svmweave::engine::SplitList(f.transformers);
  }
  if (f.dump_cfg) c.dump_cfg = true;
  return svmweave::cli::RunCommand(c, std::cout, std::cerr);
}
