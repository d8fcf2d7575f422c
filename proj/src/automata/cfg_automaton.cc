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


#include "svmweave/automata/cfg_automaton.h"

#include <algorithm>
#include <map>

#include "svmweave/support/glob.h"

namespace svmweave::automata {

const EventRule* EventSpec::Match(const std::string& callee) const {
  for (const EventRule& r : rules) {
    if (GlobMatch(r.callee_pattern, callee)) return &r;
  }
  return nullptr;
}

std::vector<int> FilterEvents(const vm::Method& m, const cfg::Cfg& g,
                              const EventSpec& spec) {
  (void)g;
  std::vector<int> out(m.body.size(), kEpsilon);
  for (std::size_t i = 0; i < m.body.size(); ++i) {
    const vm::Instruction& ins = m.body[i];
    if (ins.opcode != vm::Opcode::kCall || ins.hidden) continue;
    const EventRule* rule = spec.Match(ins.text);
    if (rule == nullptr) continue;
    auto it = std::find(spec.alphabet.begin(), spec.alphabet.end(), rule->symbol);
    if (it != spec.alphabet.end()) {
      out[i] = static_cast<int>(it - spec.alphabet.begin());
    }
  }
  return out;
}

int ModifiedGraph::OutDegree(int node) const {
  return static_cast<int>(std::count_if(
      edges.begin(), edges.end(), [node](const auto& e) { return e.first == node; }));
}

int ModifiedGraph::InDegree(int node) const {
  return static_cast<int>(std::count_if(
      edges.begin(), edges.end(), [node](const auto& e) { return e.second == node; }));
}

namespace {

void MergeEpsilon(ModifiedGraph& g) {
  std::vector<bool> alive(g.nodes.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : g.edges) {
      if (a == b || g.nodes[a].symbol != kEpsilon ||
          g.nodes[b].symbol != kEpsilon) {
        continue;
      }
      bool contract = g.OutDegree(a) == 1 ||
                      (g.InDegree(b) == 1 && b != g.entry);
      if (!contract) continue;
      // Fold b into a.
      auto& into = g.nodes[static_cast<std::size_t>(a)].instructions;
      const auto& from = g.nodes[static_cast<std::size_t>(b)].instructions;
      into.insert(into.end(), from.begin(), from.end());
      std::sort(into.begin(), into.end());
      std::set<std::pair<int, int>> edges;
      for (auto [x, y] : g.edges) {
        if (x == b) x = a;
        if (y == b) y = a;
        if (!(x == a && y == a)) edges.emplace(x, y);
      }
      g.edges = std::move(edges);
      if (g.entry == b) g.entry = a;
      alive[static_cast<std::size_t>(b)] = false;
      changed = true;
      break;
    }
  }
  // Drop remaining epsilon self loops and renumber.
  std::map<int, int> renumber;
  std::vector<GraphNode> nodes;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!alive[i]) continue;
    renumber[static_cast<int>(i)] = static_cast<int>(nodes.size());
    nodes.push_back(g.nodes[i]);
    nodes.back().id = static_cast<int>(nodes.size()) - 1;
  }
  std::set<std::pair<int, int>> edges;
  for (auto [x, y] : g.edges) {
    if (x == y && g.nodes[static_cast<std::size_t>(x)].symbol == kEpsilon) {
      continue;
    }
    edges.emplace(renumber.at(x), renumber.at(y));
  }
  g.nodes = std::move(nodes);
  g.edges = std::move(edges);
  g.entry = renumber.at(g.entry);
}

}  // namespace

ModifiedGraph SplitBlocks(const cfg::Cfg& g, const std::vector<int>& events,
                          bool merge_epsilon) {
  ModifiedGraph out;
  std::vector<int> first(g.blocks().size()), last(g.blocks().size());
  for (const cfg::BasicBlock& b : g.blocks()) {
    auto add = [&](std::vector<int> instructions, int symbol) {
      GraphNode node;
      node.id = static_cast<int>(out.nodes.size());
      node.instructions = std::move(instructions);
      node.symbol = symbol;
      out.nodes.push_back(std::move(node));
      return out.nodes.back().id;
    };
    std::size_t id = static_cast<std::size_t>(b.id);
    if (b.empty()) {
      first[id] = last[id] = add({}, kEpsilon);
      continue;
    }
    for (std::size_t i = b.begin; i < b.end; ++i) {
      int node = add({static_cast<int>(i)}, events.at(i));
      if (i == b.begin) {
        first[id] = node;
      } else {
        out.edges.emplace(node - 1, node);
      }
      last[id] = node;
    }
  }
  for (const cfg::Edge& e : g.edges()) {
    out.edges.emplace(last[static_cast<std::size_t>(e.from)],
                      first[static_cast<std::size_t>(e.to)]);
  }
  out.entry = first[static_cast<std::size_t>(g.EntryBlock())];
  if (merge_epsilon) MergeEpsilon(out);
  return out;
}

Nfa BuildCfgAutomaton(const ModifiedGraph& graph,
                      const std::vector<std::string>& alphabet) {
  Nfa a(alphabet);
  for (const GraphNode& node : graph.nodes) {
    StateTag tag;
    tag.node = node.id;
    if (node.symbol != kEpsilon) {
      tag.instruction = node.instructions.front();
      tag.label = alphabet[static_cast<std::size_t>(node.symbol)] + "@" +
                  std::to_string(tag.instruction);
    } else if (node.instructions.empty()) {
      tag.label = "eps";
    } else {
      tag.label = "eps[" + std::to_string(node.instructions.front()) + ".." +
                  std::to_string(node.instructions.back()) + "]";
    }
    int q = a.AddState(std::move(tag));
    a.SetAccepting(q);
  }
  a.AddInitial(graph.entry);
  for (auto [from, to] : graph.edges) {
    a.AddTransition(from, graph.nodes[static_cast<std::size_t>(from)].symbol,
                    to);
  }
  return a;
}

Nfa MethodAutomaton(const vm::Method& m, const EventSpec& spec) {
  cfg::Cfg g = cfg::BuildCfg(m);
  return BuildCfgAutomaton(SplitBlocks(g, FilterEvents(m, g, spec)),
                           spec.alphabet);
}

}  // namespace svmweave::automata
