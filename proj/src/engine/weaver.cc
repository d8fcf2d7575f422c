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


#include "svmweave/engine/weaver.h"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "svmweave/cfg/cfg.h"
#include "svmweave/support/error.h"
#include "svmweave/vm/interpreter.h"

namespace svmweave::engine {

using shadows::Direction;
using shadows::ElementKind;
using shadows::LocatorKind;
using shadows::Shadow;
using vm::Instruction;
using vm::Opcode;

namespace {

constexpr int kMaxPrintParts = 8;

// Where an instruction of the current method version came from: an input
// instruction, or advice woven at some region of the input method.
struct Provenance {
  int original = -1;
  std::string anchor_key;
  std::string anchor_region;
};

// Per-method state kept across transformer applications.
struct MethodTrack {
  std::unique_ptr<vm::Method> input;
  std::unique_ptr<cfg::Cfg> input_cfg;
  shadows::ShadowPartition partition;
  std::vector<Provenance> provenance;
};

// Anchor of one weave: equivalence key and readable region in the input.
struct Anchor {
  std::string key;
  std::string region;
};

struct Piece {
  std::vector<Instruction> code;  // jumps relative to the piece start
  Anchor anchor;
};

enum class BucketKind { kPre, kAt, kPost, kFalseEdge };

struct Slot {
  BucketKind kind;
  int index;
};

std::string VisibilityKey(const Provenance& p) {
  return p.original >= 0 ? "i" + std::to_string(p.original) : p.anchor_key;
}

}  // namespace

// Mutable state behind the Joinpoints of one method weave.
class WeaveSession {
 public:
  vm::Method* method = nullptr;
  std::vector<int> hides;
  std::vector<std::string>* lines = nullptr;
};

std::string DynamicValue::ToString() const {
  switch (source) {
    case Source::kLocalSlot:
      return "local(" + std::to_string(index) + ")";
    case Source::kStackValue:
      return "stack(" + std::to_string(index) + ")";
    case Source::kMethodArg:
      return "arg(" + std::to_string(index) + ")";
    case Source::kMethodResult:
      return "result";
    case Source::kSyntheticLocal:
      return "synthetic(" + std::to_string(index) + ")";
  }
  return "?";
}

void Joinpoint::Print(std::vector<Param> parts) {
  Directive d;
  d.kind = Directive::Kind::kPrint;
  d.params = std::move(parts);
  advice_.directives.push_back(std::move(d));
}

void Joinpoint::Invoke(std::string callee, std::vector<Param> params) {
  Directive d;
  d.kind = Directive::Kind::kInvoke;
  d.callee = std::move(callee);
  d.params = std::move(params);
  advice_.directives.push_back(std::move(d));
}

void Joinpoint::Insert(std::vector<Instruction> code) {
  Directive d;
  d.kind = Directive::Kind::kInsertRaw;
  d.raw = std::move(code);
  advice_.directives.push_back(std::move(d));
}

void Joinpoint::Remove() {
  Directive d;
  d.kind = Directive::Kind::kRemove;
  advice_.directives.push_back(std::move(d));
}

void Joinpoint::Hide(int instruction) {
  if (session_->method == nullptr) {
    throw WeaveError("hide requires a method-level joinpoint");
  }
  if (instruction < 0 ||
      static_cast<std::size_t>(instruction) >= session_->method->body.size()) {
    throw WeaveError("hide: no instruction " + std::to_string(instruction));
  }
  session_->hides.push_back(instruction);
}

int Joinpoint::AddSyntheticLocal() {
  if (session_->method == nullptr) {
    throw WeaveError("synthetic locals require a method-level joinpoint");
  }
  return engine::AddSyntheticLocal(*session_->method);
}

void Joinpoint::Report(std::string line) {
  session_->lines->push_back(std::move(line));
}

bool TransformerInstance::HasCallback() const {
  return before_instruction || after_instruction || before_method_call ||
         after_method_call || on_basic_block_enter || on_basic_block_exit ||
         on_true_branch_enter || on_false_branch_enter || on_method_enter ||
         on_method_exit || on_class_enter || on_class_exit;
}

int WeaveReport::TotalSites() const {
  int total = 0;
  for (const MethodWeave& e : entries) total += static_cast<int>(e.used.size());
  return total;
}

int WeaveReport::TotalHidden() const {
  int total = 0;
  for (const MethodWeave& e : entries) total += e.hidden;
  return total;
}

int AddSyntheticLocal(vm::Method& method) { return method.nlocals++; }

void HideInstruction(vm::Instruction& ins) { ins.hidden = true; }

namespace {

using CalleeLookup = std::function<const vm::Method*(const std::string&)>;

// Spill slots shared by the directives of one joinpoint.
struct SpillState {
  std::vector<int> slots;
};

Instruction Literal(const vm::Value& v) {
  return v.is_int() ? Instruction::Const(v.as_int())
                    : Instruction::Pushs(v.as_str());
}

bool IsCallSite(const WeaveSite& site) {
  return site.instruction != nullptr &&
         site.instruction->opcode == Opcode::kCall;
}

// Pushes `dv`. Sets `needs_spill` when the call arguments on the stack have
// to be moved into the spill slots first.
std::vector<Instruction> LoadDynamic(const DynamicValue& dv,
                                     const WeaveSite& site,
                                     const CalleeLookup& lookup,
                                     vm::Method& method, SpillState& spill,
                                     bool& needs_spill) {
  using Source = DynamicValue::Source;
  const Shadow& s = site.shadow;
  auto fail = [&](const std::string& why) -> std::vector<Instruction> {
    throw WeaveError(dv.ToString() + " is not available at " + s.ToString() +
                     ": " + why);
  };
  auto call_returns = [&]() {
    const vm::Method* callee = lookup(site.instruction->text);
    return callee != nullptr && vm::CalleeReturns(*callee);
  };
  auto spill_arg = [&](int k) {
    int n = static_cast<int>(site.instruction->operand);
    if (k < 0 || k >= n) fail("argument index out of range");
    if (spill.slots.empty()) {
      for (int i = 0; i < n; ++i) spill.slots.push_back(AddSyntheticLocal(method));
    }
    needs_spill = true;
    return std::vector<Instruction>{
        Instruction::Load(spill.slots[static_cast<std::size_t>(k)])};
  };
  // A plain DUP would copy whatever earlier parameters pushed, so the result
  // goes through a slot as well.
  auto spill_result = [&]() {
    if (spill.slots.empty()) spill.slots.push_back(AddSyntheticLocal(method));
    needs_spill = true;
    return std::vector<Instruction>{Instruction::Load(spill.slots.front())};
  };
  switch (dv.source) {
    case Source::kLocalSlot:
    case Source::kSyntheticLocal:
      if (dv.index < 0 || dv.index >= method.nlocals) fail("no such slot");
      return {Instruction::Load(dv.index)};
    case Source::kMethodResult:
      if (s.direction != Direction::kAfter || !IsCallSite(site)) {
        fail("a result exists only after a call");
      }
      if (!call_returns()) fail("the callee returns nothing");
      return spill_result();
    case Source::kMethodArg:
      if (s.kind == ElementKind::kMethod && s.direction == Direction::kEnter) {
        if (dv.index < 0 || dv.index >= method.nargs) {
          fail("argument index out of range");
        }
        return {Instruction::Load(dv.index)};
      }
      if (s.direction != Direction::kBefore || !IsCallSite(site)) {
        fail("arguments are only available before a call");
      }
      return spill_arg(dv.index);
    case Source::kStackValue:
      if (IsCallSite(site) && s.direction == Direction::kBefore) {
        int n = static_cast<int>(site.instruction->operand);
        return spill_arg(n - 1 - dv.index);
      }
      if (IsCallSite(site) && s.direction == Direction::kAfter &&
          dv.index == 0 && call_returns()) {
        return spill_result();
      }
      return fail("stack values are only available around calls");
  }
  return {};
}

std::vector<Instruction> SpillPrologue(const SpillState& spill) {
  std::vector<Instruction> out;
  for (auto it = spill.slots.rbegin(); it != spill.slots.rend(); ++it) {
    out.push_back(Instruction::Store(*it));
  }
  return out;
}

std::vector<Instruction> SpillEpilogue(const SpillState& spill) {
  std::vector<Instruction> out;
  for (int slot : spill.slots) out.push_back(Instruction::Load(slot));
  return out;
}

}  // namespace

ResolvedValue ResolveDynamic(const DynamicValue& dv, const WeaveSite& site,
                             const vm::Program& program, vm::Method& method) {
  SpillState spill;
  bool needs_spill = false;
  CalleeLookup lookup = [&program](const std::string& name) {
    return program.Find(name);
  };
  ResolvedValue out;
  out.load = LoadDynamic(dv, site, lookup, method, spill, needs_spill);
  if (needs_spill) {
    out.prologue = SpillPrologue(spill);
    out.epilogue = SpillEpilogue(spill);
  }
  return out;
}

namespace {

class Weaver {
 public:
  Weaver(const vm::Program& program, const WeaveOptions& options)
      : program_(program), options_(options) {}

  WeaveResult Run(const std::vector<TransformerInstance>& ts) {
    for (std::size_t app = 0; app < ts.size(); ++app) {
      if (!ts[app].HasCallback()) {
        throw Error("transformer '" + ts[app].name + "' has no callbacks");
      }
      Apply(ts[app], static_cast<int>(app));
    }
    WeaveResult result{std::move(program_), std::move(report_), {}};
    result.collisions = DetectCollisions(result.report);
    return result;
  }

 private:
  // ---- per transformer -------------------------------------------------

  void Apply(const TransformerInstance& t, int app) {
    std::vector<std::string> owners;
    std::map<std::string, std::vector<std::string>> by_owner;
    for (const vm::Method& m : program_.methods()) {
      if (m.is_extern || !options_.scope.Matches(m.QualifiedName())) continue;
      if (by_owner.count(m.owner) == 0) owners.push_back(m.owner);
      by_owner[m.owner].push_back(m.QualifiedName());
    }
    for (const std::string& owner : owners) {
      ClassContext cc(owner, by_owner[owner]);
      FireClass(t, t.on_class_enter, cc, LocatorKind::kOnClassEnter);
      for (const std::string& qname : by_owner[owner]) {
        WeaveMethod(t, app, cc, qname);
      }
      FireClass(t, t.on_class_exit, cc, LocatorKind::kOnClassExit);
    }
  }

  void FireClass(const TransformerInstance& t, const Callback<ClassContext>& cb,
                 const ClassContext& cc, LocatorKind kind) {
    if (!cb) return;
    WeaveSession session;
    session.lines = &report_.lines;
    Joinpoint jp(&session, std::nullopt, kind);
    try {
      cb(cc, jp);
    } catch (const Error& e) {
      throw WeaveError("transformer '" + t.name + "' at class " + cc.name() +
                       ": " + e.what());
    }
    if (!jp.advice().empty()) {
      throw WeaveError("transformer '" + t.name + "' at class " + cc.name() +
                       ": class locators match no shadow to weave at");
    }
  }

  // ---- per method ------------------------------------------------------

  MethodTrack& Track(const std::string& qname) {
    auto it = tracks_.find(qname);
    if (it != tracks_.end()) return *it->second;
    auto track = std::make_unique<MethodTrack>();
    track->input = std::make_unique<vm::Method>(*program_.Find(qname));
    track->input_cfg = std::make_unique<cfg::Cfg>(cfg::BuildCfg(*track->input));
    track->partition = shadows::ShadowPartition(*track->input_cfg);
    for (std::size_t i = 0; i < track->input->body.size(); ++i) {
      track->provenance.push_back({static_cast<int>(i), {}, {}});
    }
    return *tracks_.emplace(qname, std::move(track)).first->second;
  }

  struct MethodState {
    const TransformerInstance* t;
    int app;
    std::string qname;
    vm::Method work;
    const cfg::Cfg* split = nullptr;
    MethodTrack* track = nullptr;
    WeaveSession session;
    std::vector<std::vector<Piece>> pre, at, post;
    std::map<int, std::vector<Piece>> false_edge;
    std::vector<bool> removed;
    std::vector<std::pair<std::string, vm::Method>> new_externs;
    MethodWeave entry;
  };

  void WeaveMethod(const TransformerInstance& t, int app,
                   const ClassContext& cc, const std::string& qname) {
    MethodState st;
    st.t = &t;
    st.app = app;
    st.qname = qname;
    st.work = *program_.Find(qname);
    st.track = &Track(qname);
    st.session.method = &st.work;
    st.session.lines = &report_.lines;
    std::size_t n = st.work.body.size();
    st.pre.resize(n);
    st.at.resize(n);
    st.post.resize(n);
    st.removed.assign(n, false);
    st.entry.transformer = t.name;
    st.entry.application = app;
    st.entry.method = qname;

    cfg::Cfg g = cfg::BuildCfg(st.work);
    cfg::Cfg gs = cfg::SplitCriticalEdges(g);
    st.split = &gs;
    MethodContext mc(&program_, &st.work, &g, &gs, &cc);

    Fire(st, t.on_method_enter, mc, Shadow::MethodEnter(),
         LocatorKind::kOnMethodEnter);
    for (const cfg::BasicBlock& b : gs.blocks()) {
      BasicBlockContext bc(&mc, b.id);
      Fire(st, t.on_basic_block_enter, bc, Shadow::BlockEnter(b.id),
           LocatorKind::kOnBasicBlockEnter);
      for (const cfg::BasicBlock& p : gs.blocks()) {
        if (gs.TrueBranch(p.id) == b.id) {
          Fire(st, t.on_true_branch_enter, bc, Shadow::BlockEnter(b.id),
               LocatorKind::kOnTrueBranchEnter);
        }
        if (gs.FalseBranch(p.id) == b.id) {
          Fire(st, t.on_false_branch_enter, bc, Shadow::BlockEnter(b.id),
               LocatorKind::kOnFalseBranchEnter);
        }
      }
      for (int i : shadows::VisibleInstructions(gs, b.id)) {
        InstructionContext ic(&bc, i);
        Fire(st, t.before_instruction, ic, Shadow::Before(i),
             LocatorKind::kBeforeInstruction);
        if (ic.IsCall()) {
          MethodCallContext call(&bc, i);
          Fire(st, t.before_method_call, call, Shadow::Before(i),
               LocatorKind::kBeforeMethodCall);
          Fire(st, t.after_method_call, call, Shadow::After(i),
               LocatorKind::kAfterMethodCall);
        }
        Fire(st, t.after_instruction, ic, Shadow::After(i),
             LocatorKind::kAfterInstruction);
      }
      Fire(st, t.on_basic_block_exit, bc, Shadow::BlockExit(b.id),
           LocatorKind::kOnBasicBlockExit);
    }
    Fire(st, t.on_method_exit, mc, Shadow::MethodExit(),
         LocatorKind::kOnMethodExit);

    Commit(st);
    report_.entries.push_back(std::move(st.entry));
  }

  template <typename Ctx>
  void Fire(MethodState& st, const Callback<Ctx>& cb, const Ctx& ctx,
            const Shadow& s, LocatorKind kind) {
    if (!cb) return;
    Joinpoint jp(&st.session, s, kind);
    try {
      cb(ctx, jp);
      Place(st, s, kind, jp.advice());
    } catch (const Error& e) {
      throw WeaveError("transformer '" + st.t->name + "' at " + s.ToString() +
                       " in " + st.qname + ": " + e.what());
    }
  }

  const vm::Method* Lookup(const MethodState& st, const std::string& name) {
    if (const vm::Method* m = program_.Find(name)) return m;
    for (const auto& [q, m] : st.new_externs) {
      if (q == name) return &m;
    }
    return nullptr;
  }

  // Declares `name` as an extern of `nargs` parameters unless it exists.
  const vm::Method& EnsureExtern(MethodState& st, const std::string& name,
                                 int nargs) {
    const vm::Method* m = Lookup(st, name);
    if (m == nullptr) {
      vm::Method decl;
      std::tie(decl.owner, decl.name) = vm::SplitQualifiedName(name);
      decl.nargs = decl.nlocals = nargs;
      decl.is_extern = true;
      st.new_externs.emplace_back(name, std::move(decl));
      return st.new_externs.back().second;
    }
    if (!m->is_extern) {
      throw WeaveError("invoke target " + name + " is not an extern");
    }
    if (m->nargs != nargs) {
      throw WeaveError("invoke target " + name + " takes " +
                       std::to_string(m->nargs) + " argument(s), got " +
                       std::to_string(nargs));
    }
    return *m;
  }

  std::vector<Instruction> CompileCall(MethodState& st, const WeaveSite& site,
                                       SpillState& spill,
                                       const std::string& callee,
                                       const std::vector<Param>& params) {
    CalleeLookup lookup = [&](const std::string& name) {
      return Lookup(st, name);
    };
    bool needs_spill = false;
    std::vector<Instruction> body;
    for (const Param& p : params) {
      if (const auto* v = std::get_if<vm::Value>(&p)) {
        body.push_back(Literal(*v));
      } else {
        auto load = LoadDynamic(std::get<DynamicValue>(p), site, lookup,
                                st.work, spill, needs_spill);
        body.insert(body.end(), load.begin(), load.end());
      }
    }
    const vm::Method& target =
        EnsureExtern(st, callee, static_cast<int>(params.size()));
    body.push_back(Instruction::Call(callee, static_cast<int>(params.size())));
    if (target.extern_returns) body.push_back(Instruction::Op(Opcode::kPop));
    if (!needs_spill) return body;
    std::vector<Instruction> out = SpillPrologue(spill);
    out.insert(out.end(), body.begin(), body.end());
    auto epilogue = SpillEpilogue(spill);
    out.insert(out.end(), epilogue.begin(), epilogue.end());
    return out;
  }

  void CheckRaw(const MethodState& st, const std::vector<Instruction>& raw) {
    auto size = static_cast<std::int64_t>(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const Instruction& ins = raw[i];
      std::string where = "inserted instruction " + std::to_string(i) + ": ";
      if (vm::IsJump(ins.opcode) && (ins.operand < 0 || ins.operand > size)) {
        throw WeaveError(where + "jump target " + std::to_string(ins.operand) +
                         " outside the inserted code");
      }
      if ((ins.opcode == Opcode::kLoad || ins.opcode == Opcode::kStore) &&
          (ins.operand < 0 || ins.operand >= st.work.nlocals)) {
        throw WeaveError(where + "slot " + std::to_string(ins.operand) +
                         " exceeds the local count " +
                         std::to_string(st.work.nlocals));
      }
      if (ins.opcode == Opcode::kCall) {
        const vm::Method* callee = Lookup(st, ins.text);
        if (callee == nullptr || callee->nargs != ins.operand) {
          throw WeaveError(where + "call to unknown or mismatched " + ins.text);
        }
      }
    }
  }

  std::vector<Slot> Slots(const MethodState& st, const Shadow& s) {
    const cfg::Cfg& gs = *st.split;
    const auto& body = st.work.body;
    auto after = [&](int i) {
      return vm::IsTransfer(body[static_cast<std::size_t>(i)].opcode)
                 ? Slot{BucketKind::kAt, i}
                 : Slot{BucketKind::kPost, i};
    };
    switch (s.kind) {
      case ElementKind::kMethod:
        if (s.direction == Direction::kEnter) return {{BucketKind::kPre, 0}};
        {
          std::vector<Slot> out;
          for (int b : gs.ExitBlocks()) {
            out.push_back({BucketKind::kAt,
                           static_cast<int>(gs.block(b).end) - 1});
          }
          return out;
        }
      case ElementKind::kInstruction:
        if (s.direction == Direction::kBefore) {
          return {{BucketKind::kAt, s.element}};
        }
        return {after(s.element)};
      case ElementKind::kBlock: {
        const cfg::BasicBlock& b = gs.block(s.element);
        if (b.synthetic) {
          const cfg::Edge& in = *std::find_if(
              gs.edges().begin(), gs.edges().end(),
              [&](const cfg::Edge& e) { return e.to == b.id; });
          int jz = static_cast<int>(gs.block(in.from).end) - 1;
          return {{in.label == cfg::EdgeLabel::kTrue ? BucketKind::kPost
                                                     : BucketKind::kFalseEdge,
                   jz}};
        }
        if (s.direction == Direction::kEnter) {
          return {{BucketKind::kAt, static_cast<int>(b.begin)}};
        }
        return {after(static_cast<int>(b.end) - 1)};
      }
    }
    return {};
  }

  Anchor AnchorOf(const MethodState& st, const Shadow& s) {
    const MethodTrack& track = *st.track;
    const cfg::Cfg& gs = *st.split;
    auto from_input = [&](const Shadow& s0) -> Anchor {
      if (!shadows::InMethod(s0, *track.input_cfg)) {
        return {"x:" + s0.ToString(), s0.ToString()};
      }
      return {"c" + std::to_string(track.partition.ClassOf(s0)), s0.ToString()};
    };
    auto of_instruction = [&](Direction d, int i) -> Anchor {
      const Provenance& p = track.provenance[static_cast<std::size_t>(i)];
      if (p.original >= 0) return from_input({d, ElementKind::kInstruction, p.original});
      return {p.anchor_key, p.anchor_region};
    };
    switch (s.kind) {
      case ElementKind::kMethod:
        return from_input(s);
      case ElementKind::kInstruction:
        return of_instruction(s.direction, s.element);
      case ElementKind::kBlock: {
        std::vector<int> visible = shadows::VisibleInstructions(gs, s.element);
        if (!visible.empty()) {
          return s.direction == Direction::kEnter
                     ? of_instruction(Direction::kBefore, visible.front())
                     : of_instruction(Direction::kAfter, visible.back());
        }
        const cfg::BasicBlock& b = gs.block(s.element);
        std::string dir = s.direction == Direction::kEnter ? "enter" : "exit";
        if (b.synthetic) {
          const cfg::Edge& in = *std::find_if(
              gs.edges().begin(), gs.edges().end(),
              [&](const cfg::Edge& e) { return e.to == b.id; });
          const Provenance& p = track.provenance[gs.block(in.from).end - 1];
          std::string key = "e:" + VisibilityKey(p) + ":" +
                            std::string(cfg::EdgeLabelName(in.label)) + ":" +
                            dir;
          return {key, "<" + dir + "," + VisibilityKey(p) + "-" +
                           std::string(cfg::EdgeLabelName(in.label)) + ">"};
        }
        const Provenance& p = track.provenance[b.begin];
        return {"h:" + VisibilityKey(p) + ":" + dir,
                "<" + dir + ",block@" + VisibilityKey(p) + ">"};
      }
    }
    return {};
  }

  void Place(MethodState& st, const Shadow& s, LocatorKind kind,
             const Advice& advice) {
    if (advice.empty()) return;
    WeaveSite site{s, kind, nullptr};
    if (s.kind == ElementKind::kInstruction) {
      site.instruction = &st.work.body[static_cast<std::size_t>(s.element)];
    }
    SpillState spill;
    std::vector<Instruction> code;
    bool remove = false;
    for (const Directive& d : advice.directives) {
      std::vector<Instruction> part;
      switch (d.kind) {
        case Directive::Kind::kPrint: {
          std::vector<Param> params = d.params;
          if (params.empty()) params.push_back(vm::Value::Str(""));
          if (static_cast<int>(params.size()) > kMaxPrintParts) {
            throw WeaveError("print takes at most 8 parts");
          }
          part = CompileCall(st, site, spill,
                             vm::PrintExternName(static_cast<int>(params.size())),
                             params);
          break;
        }
        case Directive::Kind::kInvoke:
          part = CompileCall(st, site, spill, d.callee, d.params);
          break;
        case Directive::Kind::kInsertRaw:
          CheckRaw(st, d.raw);
          part = d.raw;
          for (Instruction& ins : part) {
            if (vm::IsJump(ins.opcode)) {
              ins.operand += static_cast<std::int64_t>(code.size());
            }
          }
          break;
        case Directive::Kind::kRemove:
          if (s.kind != ElementKind::kInstruction) {
            throw WeaveError("remove needs an instruction shadow");
          }
          remove = true;
          break;
      }
      code.insert(code.end(), part.begin(), part.end());
    }
    if (code.empty() && !remove) return;

    Anchor anchor = AnchorOf(st, s);
    std::vector<Slot> slots = Slots(st, s);
    for (const Slot& slot : slots) {
      Piece piece{code, anchor};
      auto index = static_cast<std::size_t>(slot.index);
      switch (slot.kind) {
        case BucketKind::kPre:
          st.pre[index].push_back(std::move(piece));
          break;
        case BucketKind::kAt:
          st.at[index].push_back(std::move(piece));
          break;
        case BucketKind::kPost:
          st.post[index].push_back(std::move(piece));
          break;
        case BucketKind::kFalseEdge:
          st.false_edge[slot.index].push_back(std::move(piece));
          break;
      }
      st.entry.inserted += static_cast<int>(code.size());
    }
    if (remove && !st.removed[static_cast<std::size_t>(s.element)]) {
      st.removed[static_cast<std::size_t>(s.element)] = true;
      ++st.entry.removed;
    }
    st.entry.used.push_back({s, anchor.region, anchor.key});
  }

  // ---- rebuilding the method -------------------------------------------

  void Commit(MethodState& st) {
    for (auto& [name, decl] : st.new_externs) program_.AddMethod(decl);
    if (st.entry.used.empty() && st.session.hides.empty()) {
      // Nothing woven; keep grown local counts only.
      program_.FindMutable(st.qname)->nlocals = st.work.nlocals;
      return;
    }
    const std::vector<Instruction>& body = st.work.body;
    const std::size_t n = body.size();
    std::vector<Instruction> out;
    std::vector<Provenance> prov;
    std::vector<int> old_of;  // input index of relocatable jumps, else -1
    std::vector<std::int64_t> label_pos(n), new_pos(n, -1);

    auto emit = [&](const Piece& p) {
      auto base = static_cast<std::int64_t>(out.size());
      for (Instruction ins : p.code) {
        if (vm::IsJump(ins.opcode)) ins.operand += base;
        ins.synthetic = true;
        ins.hidden = st.t->hidden;
        out.push_back(std::move(ins));
        prov.push_back({-1, p.anchor.key, p.anchor.region});
        old_of.push_back(-1);
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (const Piece& p : st.pre[i]) emit(p);
      label_pos[i] = static_cast<std::int64_t>(out.size());
      for (const Piece& p : st.at[i]) emit(p);
      if (!st.removed[i]) {
        new_pos[i] = static_cast<std::int64_t>(out.size());
        out.push_back(body[i]);
        prov.push_back(st.track->provenance[i]);
        old_of.push_back(static_cast<int>(i));
      }
      for (const Piece& p : st.post[i]) emit(p);
    }
    std::map<int, std::int64_t> trampoline;
    for (const auto& [jz, pieces] : st.false_edge) {
      trampoline[jz] = static_cast<std::int64_t>(out.size());
      for (const Piece& p : pieces) emit(p);
      Instruction back = Instruction::Jmp(
          label_pos[static_cast<std::size_t>(body[static_cast<std::size_t>(jz)].operand)]);
      back.synthetic = true;
      back.hidden = st.t->hidden;
      out.push_back(back);
      prov.push_back({-1, pieces.front().anchor.key, pieces.front().anchor.region});
      old_of.push_back(-1);
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
      int old = old_of[k];
      if (old < 0 || !vm::IsJump(out[k].opcode)) continue;
      auto it = trampoline.find(old);
      out[k].operand = it != trampoline.end()
                           ? it->second
                           : label_pos[static_cast<std::size_t>(out[k].operand)];
    }
    for (int h : st.session.hides) {
      std::int64_t pos = new_pos[static_cast<std::size_t>(h)];
      if (pos >= 0 && !out[static_cast<std::size_t>(pos)].hidden) {
        out[static_cast<std::size_t>(pos)].hidden = true;
        ++st.entry.hidden;
      }
    }

    vm::Method& target = *program_.FindMutable(st.qname);
    target.nlocals = st.work.nlocals;
    target.body = std::move(out);
    st.track->provenance = std::move(prov);
    try {
      vm::ValidateMethod(program_, target);
    } catch (const ValidationError& e) {
      throw WeaveError("transformer '" + st.t->name + "' produced invalid code in " +
                       st.qname + ": " + e.what());
    }
  }

  vm::Program program_;
  WeaveOptions options_;
  WeaveReport report_;
  std::map<std::string, std::unique_ptr<MethodTrack>> tracks_;
};

}  // namespace

WeaveResult ApplyTransformers(const vm::Program& program,
                              const std::vector<TransformerInstance>& ts,
                              const WeaveOptions& options) {
  return Weaver(program, options).Run(ts);
}

CollisionReport DetectCollisions(const WeaveReport& report) {
  CollisionReport out;
  const auto& entries = report.entries;
  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = 0; b < entries.size(); ++b) {
      const MethodWeave& x = entries[a];
      const MethodWeave& y = entries[b];
      if (x.method != y.method || x.application >= y.application) continue;
      std::set<std::string> seen;
      for (const UsedShadow& u : x.used) {
        for (const UsedShadow& v : y.used) {
          if (u.class_key != v.class_key || !seen.insert(u.class_key).second) {
            continue;
          }
          out.collisions.push_back({x.method, x.transformer, y.transformer,
                                    x.application, y.application, u.region,
                                    v.region});
        }
      }
    }
  }
  return out;
}

}  // namespace svmweave::engine
