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

#include "tablewright/simulator.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "tablewright/error.hpp"

namespace tablewright {

namespace {

// Tables whose concatenated key is at most this wide get a direct-index array.
constexpr int kDirectKeyBits = 20;

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t x : v) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct CompiledAction {
  std::vector<std::size_t> slots;
  std::vector<std::uint64_t> masks;
};

struct CompiledTable {
  const Table* table = nullptr;
  std::vector<std::size_t> key_slots;
  std::vector<int> key_widths;
  int total_width = 0;
  std::vector<CompiledAction> actions;

  std::vector<std::int32_t> direct;  // packed key -> entry index, -1 on miss
  std::unordered_map<std::vector<std::uint64_t>, std::int32_t, VectorHash> exact;
  std::vector<std::int32_t> scan_order;  // best-first for ternary/lpm fallback

  std::uint64_t pack(const std::vector<std::uint64_t>& parts) const {
    std::uint64_t packed = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) packed = (packed << key_widths[k]) | parts[k];
    return packed;
  }
};

// Fills every packed key matched by `entry` with `index`.
void fill_matches(CompiledTable& ct, const TableEntry& entry, std::int32_t index) {
  std::uint64_t value = 0, mask = 0;
  for (std::size_t k = 0; k < entry.keys.size(); ++k) {
    const int w = ct.key_widths[k];
    const std::uint64_t m = entry.keys[k].effective_mask(w);
    value = (value << w) | (entry.keys[k].value & m);
    mask = (mask << w) | m;
  }
  const std::uint64_t free_bits = width_mask(ct.total_width) & ~mask;
  // Walk all subsets of the don't-care bits.
  std::uint64_t sub = 0;
  do {
    ct.direct[value | sub] = index;
    sub = (sub - free_bits) & free_bits;
  } while (sub != 0);
}

std::uint64_t direct_fill_cost(const CompiledTable& ct) {
  std::uint64_t cost = 0;
  for (const TableEntry& entry : ct.table->entries) {
    int fixed = 0;
    for (std::size_t k = 0; k < entry.keys.size(); ++k)
      fixed += std::popcount(entry.keys[k].effective_mask(ct.key_widths[k]));
    cost += std::uint64_t{1} << (ct.total_width - fixed);
  }
  return cost;
}

}  // namespace

struct Simulator::Impl {
  PipelineProgram program;
  StageSchedule schedule;
  std::unordered_map<std::string, std::size_t> slot;
  std::vector<int> slot_width;
  std::vector<std::size_t> input_slots;
  std::vector<std::size_t> output_slots;
  std::vector<CompiledTable> tables;
  struct CompiledOp {
    const LogicOp* op;
    std::size_t dst;
    std::vector<std::size_t> srcs;
    const RegisterDecl* reg = nullptr;
  };
  std::vector<CompiledOp> ops;

  void compile_table(const Table& t, CompiledTable& ct) {
    ct.table = &t;
    for (const std::string& k : t.keys) {
      ct.key_slots.push_back(slot.at(k));
      ct.key_widths.push_back(slot_width[slot.at(k)]);
      ct.total_width += ct.key_widths.back();
    }
    for (const ActionDef& a : t.actions) {
      CompiledAction ca;
      for (const std::string& f : a.writes) {
        ca.slots.push_back(slot.at(f));
        ca.masks.push_back(width_mask(slot_width[slot.at(f)]));
      }
      ct.actions.push_back(std::move(ca));
    }
    const auto n = static_cast<std::int32_t>(t.entries.size());
    std::vector<std::int32_t> order(n);
    for (std::int32_t i = 0; i < n; ++i) order[i] = i;
    // Best match first: highest priority (ternary) or longest prefix (lpm);
    // equal rank keeps the earlier entry.
    if (t.kind == MatchKind::kTernary) {
      std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        return t.entries[a].priority > t.entries[b].priority;
      });
    } else if (t.kind == MatchKind::kLpm) {
      std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        return t.entries[a].keys[0].prefix_len > t.entries[b].keys[0].prefix_len;
      });
    }
    const bool direct_ok = ct.total_width <= kDirectKeyBits &&
                           direct_fill_cost(ct) <= (std::uint64_t{8} << ct.total_width) + 1024;
    if (direct_ok) {
      ct.direct.assign(std::size_t{1} << ct.total_width, -1);
      for (auto it = order.rbegin(); it != order.rend(); ++it) fill_matches(ct, t.entries[*it], *it);
      return;
    }
    if (t.kind == MatchKind::kExact) {
      for (std::int32_t i = 0; i < n; ++i) {
        std::vector<std::uint64_t> key;
        for (const MatchKey& k : t.entries[i].keys) key.push_back(k.value);
        ct.exact.emplace(std::move(key), i);
      }
      return;
    }
    ct.scan_order = std::move(order);
  }

  explicit Impl(const PipelineProgram& p) : program(p) {
    require_valid(program);
    schedule = stage_schedule(program);
    for (const FieldDecl& f : program.fields) {
      slot.emplace(f.name, slot_width.size());
      slot_width.push_back(f.width);
    }
    for (const std::string& f : program.inputs) input_slots.push_back(slot.at(f));
    for (const std::string& f : program.outputs) output_slots.push_back(slot.at(f));
    tables.resize(program.tables.size());
    for (std::size_t i = 0; i < program.tables.size(); ++i) compile_table(program.tables[i], tables[i]);
    for (const LogicOp& op : program.logic) {
      CompiledOp c{&op, slot.at(op.dst), {}, nullptr};
      for (const std::string& s : op.srcs) c.srcs.push_back(slot.at(s));
      for (const RegisterDecl& r : program.registers)
        if (r.name == op.reg) c.reg = &r;
      ops.push_back(std::move(c));
    }
  }

  std::int32_t lookup(const CompiledTable& ct, const std::vector<std::uint64_t>& state) const {
    const Table& t = *ct.table;
    if (!ct.direct.empty() || ct.total_width == 0) {
      if (ct.direct.empty()) return t.entries.empty() ? -1 : 0;
      std::uint64_t packed = 0;
      for (std::size_t k = 0; k < ct.key_slots.size(); ++k)
        packed = (packed << ct.key_widths[k]) | state[ct.key_slots[k]];
      return ct.direct[packed];
    }
    if (t.kind == MatchKind::kExact) {
      std::vector<std::uint64_t> key;
      key.reserve(ct.key_slots.size());
      for (std::size_t s : ct.key_slots) key.push_back(state[s]);
      auto it = ct.exact.find(key);
      return it == ct.exact.end() ? -1 : it->second;
    }
    for (std::int32_t i : ct.scan_order) {
      const TableEntry& e = t.entries[i];
      bool hit = true;
      for (std::size_t k = 0; k < ct.key_slots.size() && hit; ++k)
        hit = e.keys[k].matches(state[ct.key_slots[k]], ct.key_widths[k]);
      if (hit) return i;
    }
    return -1;
  }

  void apply_table(const CompiledTable& ct, std::vector<std::uint64_t>& state) const {
    const std::int32_t hit = lookup(ct, state);
    const Table& t = *ct.table;
    const int action = hit >= 0 ? t.entries[hit].action_id : t.default_action.action_id;
    const auto& data = hit >= 0 ? t.entries[hit].action_data : t.default_action.data;
    const CompiledAction& ca = ct.actions[action];
    for (std::size_t w = 0; w < ca.slots.size(); ++w) state[ca.slots[w]] = data[w] & ca.masks[w];
  }

  void apply_op(const CompiledOp& c, std::vector<std::uint64_t>& state) const {
    const LogicOp& op = *c.op;
    auto src = [&](std::size_t i) { return state[c.srcs[i]]; };
    auto rhs = [&]() { return c.srcs.size() > 1 ? src(1) : op.imm; };
    std::uint64_t v = 0;
    switch (op.op) {
      case OpCode::kConst:
        v = op.imm;
        break;
      case OpCode::kCopy:
        v = src(0);
        break;
      case OpCode::kAdd:
        v = src(0) + rhs();
        break;
      case OpCode::kSub:
        v = src(0) - rhs();
        break;
      case OpCode::kShr:
        v = op.imm >= 64 ? 0 : src(0) >> op.imm;
        break;
      case OpCode::kLe:
        v = src(0) <= rhs();
        break;
      case OpCode::kLt:
        v = src(0) < rhs();
        break;
      case OpCode::kGe:
        v = src(0) >= rhs();
        break;
      case OpCode::kGt:
        v = src(0) > rhs();
        break;
      case OpCode::kEq:
        v = src(0) == rhs();
        break;
      case OpCode::kXnor:
        v = ~(src(0) ^ src(1));
        break;
      case OpCode::kPopcount:
        v = static_cast<std::uint64_t>(std::popcount(src(0)));
        break;
      case OpCode::kSelect: {
        const std::uint64_t idx = src(0);
        v = idx + 1 < c.srcs.size() ? src(idx + 1) : 0;
        break;
      }
      case OpCode::kArgmax:
      case OpCode::kArgmin: {
        std::size_t best = 0;
        for (std::size_t i = 1; i < c.srcs.size(); ++i) {
          const bool better = op.op == OpCode::kArgmax ? src(i) > src(best) : src(i) < src(best);
          if (better) best = i;
        }
        v = best;
        break;
      }
      case OpCode::kConcat:
        for (std::size_t i = 0; i < c.srcs.size(); ++i) {
          const int w = slot_width[c.srcs[i]];
          v = (w >= 64 ? 0 : v << w) | src(i);
        }
        break;
      case OpCode::kRegRead:
        v = c.reg->values[op.imm];
        break;
    }
    state[c.dst] = v & width_mask(slot_width[c.dst]);
  }

  std::vector<std::uint64_t> run(const FeatureVector& x) const {
    if (x.size() != input_slots.size())
      throw ValidationError("input: expected " + std::to_string(input_slots.size()) +
                            " feature values, got " + std::to_string(x.size()));
    std::vector<std::uint64_t> state(slot_width.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((x[i] & ~width_mask(slot_width[input_slots[i]])) != 0)
        throw ValidationError("input[" + std::to_string(i) + "]: value " + std::to_string(x[i]) +
                              " wider than field \"" + program.inputs[i] + "\"");
      state[input_slots[i]] = x[i];
    }
    for (std::size_t node : schedule.order) {
      if (node < tables.size())
        apply_table(tables[node], state);
      else
        apply_op(ops[node - tables.size()], state);
    }
    std::vector<std::uint64_t> out;
    out.reserve(output_slots.size());
    for (std::size_t s : output_slots) out.push_back(state[s]);
    return out;
  }
};

Simulator::Simulator(const PipelineProgram& program) : impl_(std::make_unique<Impl>(program)) {}
Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

std::vector<std::uint64_t> Simulator::run(const FeatureVector& x) const { return impl_->run(x); }
int Simulator::total_stages() const { return impl_->schedule.total_stages; }

std::vector<std::uint64_t> simulate(const PipelineProgram& program, const FeatureVector& x) {
  return Simulator(program).run(x);
}

}  // namespace tablewright
