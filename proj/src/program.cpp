// Copyright 2026 The Tablewright Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tablewright/program.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "tablewright/error.hpp"

namespace tablewright {

namespace {

constexpr std::pair<OpCode, std::string_view> kOpNames[] = {
    {OpCode::kConst, "const"},   {OpCode::kCopy, "copy"},       {OpCode::kAdd, "add"},
    {OpCode::kSub, "sub"},       {OpCode::kShr, "shr"},         {OpCode::kLe, "le"},
    {OpCode::kLt, "lt"},         {OpCode::kGe, "ge"},           {OpCode::kGt, "gt"},
    {OpCode::kEq, "eq"},         {OpCode::kXnor, "xnor"},       {OpCode::kPopcount, "popcount"},
    {OpCode::kSelect, "select"}, {OpCode::kArgmax, "argmax"},   {OpCode::kArgmin, "argmin"},
    {OpCode::kConcat, "concat"}, {OpCode::kRegRead, "reg_read"},
};

// Allowed source counts per opcode: {min, max}.
std::pair<std::size_t, std::size_t> source_arity(OpCode op) {
  switch (op) {
    case OpCode::kConst:
    case OpCode::kRegRead:
      return {0, 0};
    case OpCode::kCopy:
    case OpCode::kShr:
    case OpCode::kPopcount:
      return {1, 1};
    case OpCode::kAdd:
    case OpCode::kSub:
    case OpCode::kLe:
    case OpCode::kLt:
    case OpCode::kGe:
    case OpCode::kGt:
    case OpCode::kEq:
      return {1, 2};
    case OpCode::kXnor:
      return {2, 2};
    case OpCode::kSelect:
      return {2, SIZE_MAX};
    case OpCode::kArgmax:
    case OpCode::kArgmin:
    case OpCode::kConcat:
      return {1, SIZE_MAX};
  }
  return {0, 0};
}

bool has_cycle(std::size_t count, const std::vector<std::vector<std::size_t>>& succ) {
  std::vector<int> indegree(count, 0);
  for (const auto& edges : succ)
    for (std::size_t j : edges) ++indegree[j];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < count; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t i = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t j : succ[i])
      if (--indegree[j] == 0) ready.push_back(j);
  }
  return seen != count;
}

std::vector<std::vector<std::size_t>> def_use_edges(const PipelineProgram& p) {
  std::unordered_map<std::string, std::vector<std::size_t>> writers;
  const std::size_t count = p.node_count();
  for (std::size_t i = 0; i < count; ++i)
    for (const std::string& f : p.node_writes(i)) writers[f].push_back(i);
  std::vector<std::vector<std::size_t>> succ(count);
  for (std::size_t j = 0; j < count; ++j) {
    for (const std::string& f : p.node_reads(j)) {
      auto it = writers.find(f);
      if (it == writers.end()) continue;
      for (std::size_t i : it->second) succ[i].push_back(j);
    }
  }
  for (auto& edges : succ) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  return succ;
}

}  // namespace

int bits_for(std::uint64_t count) {
  int bits = 1;
  while (bits < 64 && (std::uint64_t{1} << bits) < count) ++bits;
  return bits;
}

std::string_view match_kind_name(MatchKind kind) {
  switch (kind) {
    case MatchKind::kExact:
      return "exact";
    case MatchKind::kTernary:
      return "ternary";
    case MatchKind::kLpm:
      return "lpm";
  }
  return "?";
}

MatchKind match_kind_from_name(std::string_view name) {
  if (name == "exact") return MatchKind::kExact;
  if (name == "ternary") return MatchKind::kTernary;
  if (name == "lpm") return MatchKind::kLpm;
  throw ValidationError("unknown match kind \"" + std::string(name) + "\"");
}

std::string_view opcode_name(OpCode op) {
  for (const auto& [code, name] : kOpNames)
    if (code == op) return name;
  return "?";
}

OpCode opcode_from_name(std::string_view name) {
  for (const auto& [code, n] : kOpNames)
    if (n == name) return code;
  throw ValidationError("unknown logic op \"" + std::string(name) + "\"");
}

MatchKey MatchKey::exact(std::uint64_t value) { return {MatchKind::kExact, value, 0, 0}; }

MatchKey MatchKey::ternary(std::uint64_t value, std::uint64_t mask) {
  return {MatchKind::kTernary, value & mask, mask, 0};
}

MatchKey MatchKey::lpm(std::uint64_t value, int prefix_len, int width) {
  MatchKey key{MatchKind::kLpm, value, 0, prefix_len};
  key.value &= key.effective_mask(width);
  return key;
}

std::uint64_t MatchKey::effective_mask(int width) const {
  switch (kind) {
    case MatchKind::kExact:
      return width_mask(width);
    case MatchKind::kTernary:
      return mask & width_mask(width);
    case MatchKind::kLpm:
      if (prefix_len <= 0) return 0;
      return width_mask(width) & ~width_mask(width - prefix_len);
  }
  return 0;
}

bool MatchKey::matches(std::uint64_t x, int width) const {
  const std::uint64_t m = effective_mask(width);
  return (x & m) == (value & m);
}

const FieldDecl* PipelineProgram::field(std::string_view name) const {
  for (const FieldDecl& f : fields)
    if (f.name == name) return &f;
  return nullptr;
}

const Table* PipelineProgram::table(std::string_view name) const {
  for (const Table& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

NodeRef PipelineProgram::node(std::size_t i) const {
  if (i < tables.size()) return {NodeRef::Kind::kTable, i};
  return {NodeRef::Kind::kLogic, i - tables.size()};
}

std::string PipelineProgram::node_name(std::size_t i) const {
  NodeRef ref = node(i);
  if (ref.kind == NodeRef::Kind::kTable) return "table " + tables[ref.index].name;
  const LogicOp& op = logic[ref.index];
  return "logic[" + std::to_string(ref.index) + "] " + std::string(opcode_name(op.op)) + " -> " +
         op.dst;
}

std::vector<std::string> PipelineProgram::node_reads(std::size_t i) const {
  NodeRef ref = node(i);
  if (ref.kind == NodeRef::Kind::kTable) return tables[ref.index].keys;
  return logic[ref.index].srcs;
}

std::vector<std::string> PipelineProgram::node_writes(std::size_t i) const {
  NodeRef ref = node(i);
  if (ref.kind == NodeRef::Kind::kLogic) return {logic[ref.index].dst};
  std::vector<std::string> out;
  for (const ActionDef& a : tables[ref.index].actions)
    for (const std::string& f : a.writes)
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

std::size_t PipelineProgram::total_entries() const {
  std::size_t total = 0;
  for (const Table& t : tables) total += t.entries.size();
  return total;
}

std::vector<Diagnostic> check_program(const PipelineProgram& p) {
  std::vector<Diagnostic> diags;
  auto report = [&](std::string where, std::string message) {
    diags.push_back({std::move(where), std::move(message)});
  };

  std::map<std::string, int> widths;
  for (const FieldDecl& f : p.fields) {
    if (f.width < 1 || f.width > 64) report("field " + f.name, "width must be in 1..64");
    if (!widths.emplace(f.name, f.width).second) report("field " + f.name, "declared twice");
  }
  auto declared = [&](const std::string& where, const std::string& name) {
    if (!widths.count(name)) {
      report(where, "undeclared field \"" + name + "\"");
      return false;
    }
    return true;
  };
  for (const std::string& f : p.inputs) declared("inputs", f);
  for (const std::string& f : p.outputs) declared("outputs", f);
  if (p.outputs.empty()) report("outputs", "program declares no output");
  if (p.output_kind == OutputKind::kVector && p.output_scales.size() != p.outputs.size())
    report("outputs", "one output scale is required per vector output");
  for (const std::string& f : p.inputs)
    for (std::size_t i = 0; i < p.node_count(); ++i) {
      auto writes = p.node_writes(i);
      if (std::find(writes.begin(), writes.end(), f) != writes.end())
        report(p.node_name(i), "writes input field \"" + f + "\"");
    }

  std::set<std::string> table_names;
  for (const Table& t : p.tables) {
    const std::string tw = "table " + t.name;
    if (!table_names.insert(t.name).second) report(tw, "duplicate table name");
    std::vector<int> key_widths;
    for (const std::string& k : t.keys)
      key_widths.push_back(declared(tw + " key", k) ? widths[k] : 64);
    if (t.kind == MatchKind::kLpm && t.keys.size() != 1)
      report(tw, "lpm tables take exactly one key field");
    if (t.actions.empty()) report(tw, "table declares no action");
    for (const ActionDef& a : t.actions)
      for (const std::string& f : a.writes) declared(tw + " action " + a.name, f);

    auto check_call = [&](const std::string& where, int action_id,
                          const std::vector<std::uint64_t>& data) {
      if (action_id < 0 || action_id >= static_cast<int>(t.actions.size())) {
        report(where, "action id " + std::to_string(action_id) + " out of range");
        return;
      }
      const ActionDef& a = t.actions[action_id];
      if (data.size() != a.writes.size()) {
        report(where, "action " + a.name + " expects " + std::to_string(a.writes.size()) +
                          " data words, got " + std::to_string(data.size()));
        return;
      }
      for (std::size_t w = 0; w < data.size(); ++w) {
        auto it = widths.find(a.writes[w]);
        if (it != widths.end() && (data[w] & ~width_mask(it->second)) != 0)
          report(where, "action data word " + std::to_string(w) + " wider than field \"" +
                            a.writes[w] + "\"");
      }
    };
    check_call(tw + " default action", t.default_action.action_id, t.default_action.data);

    std::set<int> priorities;
    for (std::size_t e = 0; e < t.entries.size(); ++e) {
      const TableEntry& entry = t.entries[e];
      const std::string ew = tw + " entry " + std::to_string(e);
      if (entry.keys.size() != t.keys.size()) {
        report(ew, "expected " + std::to_string(t.keys.size()) + " key components");
        continue;
      }
      for (std::size_t k = 0; k < entry.keys.size(); ++k) {
        const MatchKey& key = entry.keys[k];
        const int w = key_widths[k];
        if (key.kind != t.kind) report(ew, "key kind differs from the table match kind");
        if ((key.value & ~width_mask(w)) != 0)
          report(ew, "key value wider than field \"" + t.keys[k] + "\" (" + std::to_string(w) +
                         " bits)");
        if (key.kind == MatchKind::kTernary && (key.mask & ~width_mask(w)) != 0)
          report(ew, "key mask wider than field \"" + t.keys[k] + "\"");
        if (key.kind == MatchKind::kTernary && (key.value & ~key.mask) != 0)
          report(ew, "ternary value has bits outside its mask");
        if (key.kind == MatchKind::kLpm && (key.prefix_len < 0 || key.prefix_len > w))
          report(ew, "prefix length outside 0.." + std::to_string(w));
        else if (key.kind == MatchKind::kLpm && (key.value & ~key.effective_mask(w)) != 0)
          report(ew, "lpm value has bits beyond its prefix");
      }
      if (t.kind == MatchKind::kTernary && !priorities.insert(entry.priority).second)
        report(ew, "duplicate ternary priority " + std::to_string(entry.priority));
      check_call(ew, entry.action_id, entry.action_data);
    }
  }

  std::map<std::string, const RegisterDecl*> regs;
  for (const RegisterDecl& r : p.registers) {
    if (r.width < 1 || r.width > 64) report("register " + r.name, "width must be in 1..64");
    if (!regs.emplace(r.name, &r).second) report("register " + r.name, "declared twice");
    for (std::uint64_t v : r.values)
      if ((v & ~width_mask(r.width)) != 0) report("register " + r.name, "initializer wider than register");
  }

  for (std::size_t i = 0; i < p.logic.size(); ++i) {
    const LogicOp& op = p.logic[i];
    const std::string lw = "logic[" + std::to_string(i) + "] " + std::string(opcode_name(op.op));
    declared(lw, op.dst);
    for (const std::string& s : op.srcs) declared(lw, s);
    auto [lo, hi] = source_arity(op.op);
    if (op.srcs.size() < lo || op.srcs.size() > hi) report(lw, "wrong number of sources");
    if (op.op == OpCode::kRegRead) {
      auto it = regs.find(op.reg);
      if (it == regs.end())
        report(lw, "unknown register \"" + op.reg + "\"");
      else if (op.imm >= it->second->values.size())
        report(lw, "register index out of range");
    }
    if (op.op == OpCode::kConcat) {
      int total = 0;
      for (const std::string& s : op.srcs)
        if (widths.count(s)) total += widths[s];
      if (widths.count(op.dst) && total > widths[op.dst])
        report(lw, "concatenation wider than destination");
    }
  }

  for (std::size_t i = 0; i < p.node_count(); ++i) {
    auto reads = p.node_reads(i);
    for (const std::string& f : p.node_writes(i))
      if (std::find(reads.begin(), reads.end(), f) != reads.end())
        report(p.node_name(i), "dependency cycle: reads and writes \"" + f + "\"");
  }
  if (has_cycle(p.node_count(), def_use_edges(p))) report("program", "dependency cycle");
  return diags;
}

void require_valid(const PipelineProgram& program) {
  auto diags = check_program(program);
  if (!diags.empty())
    throw ValidationError("invalid program: " + diags.front().where + ": " + diags.front().message);
}

StageSchedule stage_schedule(const PipelineProgram& p) {
  const std::size_t count = p.node_count();
  auto succ = def_use_edges(p);
  std::vector<int> indegree(count, 0);
  for (const auto& edges : succ)
    for (std::size_t j : edges) ++indegree[j];

  StageSchedule schedule;
  schedule.stage.assign(count, 1);
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < count; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t i = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t j : succ[i]) {
      schedule.stage[j] = std::max(schedule.stage[j], schedule.stage[i] + 1);
      if (--indegree[j] == 0) ready.push_back(j);
    }
  }
  if (seen != count) throw ValidationError("program: dependency cycle");

  schedule.order.resize(count);
  for (std::size_t i = 0; i < count; ++i) schedule.order[i] = i;
  std::stable_sort(schedule.order.begin(), schedule.order.end(),
                   [&](std::size_t a, std::size_t b) { return schedule.stage[a] < schedule.stage[b]; });
  for (int s : schedule.stage) schedule.total_stages = std::max(schedule.total_stages, s);
  return schedule;
}

}  // namespace tablewright
