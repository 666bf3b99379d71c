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

#ifndef TABLEWRIGHT_PROGRAM_HPP_
#define TABLEWRIGHT_PROGRAM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tablewright {

inline constexpr int kProgramSchemaVersion = 1;

inline constexpr std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

// Smallest width that can hold every value in [0, count).
int bits_for(std::uint64_t count);

enum class MatchKind { kExact, kTernary, kLpm };

std::string_view match_kind_name(MatchKind kind);
MatchKind match_kind_from_name(std::string_view name);

// One key component. Exact keys ignore `mask`; ternary keys match when
// (x & mask) == value; lpm keys match the top `prefix_len` bits of the field.
// Constructors normalise `value` so that value & ~mask == 0.
struct MatchKey {
  MatchKind kind = MatchKind::kExact;
  std::uint64_t value = 0;
  std::uint64_t mask = 0;
  int prefix_len = 0;

  static MatchKey exact(std::uint64_t value);
  static MatchKey ternary(std::uint64_t value, std::uint64_t mask);
  static MatchKey lpm(std::uint64_t value, int prefix_len, int width);

  // Mask actually applied for a field of `width` bits.
  std::uint64_t effective_mask(int width) const;
  bool matches(std::uint64_t x, int width) const;
  bool operator==(const MatchKey&) const = default;
};

struct TableEntry {
  std::vector<MatchKey> keys;
  int priority = 0;  // ternary only; larger wins
  int action_id = 0;
  std::vector<std::uint64_t> action_data;
  bool operator==(const TableEntry&) const = default;
};

struct FieldDecl {
  std::string name;
  int width = 1;
  bool operator==(const FieldDecl&) const = default;
};

// An action copies its action-data words into `writes`, in order.
struct ActionDef {
  std::string name;
  std::vector<std::string> writes;
  bool operator==(const ActionDef&) const = default;
};

struct ActionCall {
  int action_id = 0;
  std::vector<std::uint64_t> data;
  bool operator==(const ActionCall&) const = default;
};

struct Table {
  std::string name;
  MatchKind kind = MatchKind::kExact;
  std::vector<std::string> keys;
  std::vector<ActionDef> actions;
  std::vector<TableEntry> entries;
  ActionCall default_action;
  bool operator==(const Table&) const = default;
};

enum class OpCode {
  kConst,     // dst = imm
  kCopy,      // dst = a
  kAdd,       // dst = a + (b | imm), modular in the dst width
  kSub,       // dst = a - (b | imm), modular in the dst width
  kShr,       // dst = a >> imm
  kLe,        // dst = a <= (b | imm)
  kLt,
  kGe,
  kGt,
  kEq,
  kXnor,      // dst = ~(a ^ b)
  kPopcount,  // dst = popcount(a)
  kSelect,    // dst = srcs[1 + a]
  kArgmax,    // dst = index of the largest source, lowest index on ties
  kArgmin,
  kConcat,    // dst = srcs[0] ++ srcs[1] ++ ..., srcs[0] most significant
  kRegRead,   // dst = reg[imm]
};

std::string_view opcode_name(OpCode op);
OpCode opcode_from_name(std::string_view name);

struct LogicOp {
  OpCode op = OpCode::kConst;
  std::string dst;
  std::vector<std::string> srcs;
  std::uint64_t imm = 0;
  std::string reg;
  bool operator==(const LogicOp&) const = default;
};

struct RegisterDecl {
  std::string name;
  int width = 1;
  std::vector<std::uint64_t> values;
  bool operator==(const RegisterDecl&) const = default;
};

enum class OutputKind { kLabel, kVector };

// Recovers a real value from an output word: (word - offset) / scale.
struct OutputScale {
  double scale = 1.0;
  double offset = 0.0;
  bool operator==(const OutputScale&) const = default;
};

// Reference to one pipeline element: a table or a logic op.
struct NodeRef {
  enum class Kind { kTable, kLogic } kind = Kind::kTable;
  std::size_t index = 0;
  bool operator==(const NodeRef&) const = default;
};

struct PipelineProgram {
  std::string name;
  std::string family;
  std::string variant;
  std::vector<FieldDecl> fields;
  std::vector<std::string> inputs;  // bound to FeatureVector positions
  std::vector<std::string> outputs;
  OutputKind output_kind = OutputKind::kLabel;
  std::vector<OutputScale> output_scales;  // parallel to outputs for kVector
  std::vector<Table> tables;
  std::vector<LogicOp> logic;
  std::vector<RegisterDecl> registers;
  std::vector<std::pair<std::string, std::string>> config;  // echoed into reports

  const FieldDecl* field(std::string_view name) const;
  const Table* table(std::string_view name) const;
  std::size_t node_count() const { return tables.size() + logic.size(); }
  NodeRef node(std::size_t i) const;
  std::string node_name(std::size_t i) const;
  // Fields each node reads or writes (tables: keys and action targets).
  std::vector<std::string> node_reads(std::size_t i) const;
  std::vector<std::string> node_writes(std::size_t i) const;
  std::size_t total_entries() const;
  bool operator==(const PipelineProgram&) const = default;
};

struct Diagnostic {
  std::string where;
  std::string message;
};

// Empty iff every IR invariant holds.
std::vector<Diagnostic> check_program(const PipelineProgram& program);

// Throws ValidationError carrying the first diagnostic, if any.
void require_valid(const PipelineProgram& program);

struct StageSchedule {
  std::vector<int> stage;        // per node (tables first, then logic), 1-based
  std::vector<std::size_t> order;  // execution order, stage-major then node index
  int total_stages = 0;
};

// Longest-path leveling of the def-use DAG. Throws ValidationError on cycles.
StageSchedule stage_schedule(const PipelineProgram& program);

}  // namespace tablewright

#endif  // TABLEWRIGHT_PROGRAM_HPP_
