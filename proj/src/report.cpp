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

#include "tablewright/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include "tablewright/error.hpp"

namespace tablewright {

Profile profile_from_name(std::string_view name) {
  if (name == "software") return Profile::kSoftware;
  if (name == "hardware") return Profile::kHardware;
  throw ValidationError("unknown profile '" + std::string(name) + "' (expected software or hardware)");
}

std::string_view profile_name(Profile p) { return p == Profile::kHardware ? "hardware" : "software"; }

ResourceReport resource_report(const PipelineProgram& p, Profile profile, const HardwareLimits& limits) {
  const StageSchedule schedule = stage_schedule(p);
  ResourceReport r;
  r.program = p.name;
  r.family = p.family;
  r.variant = p.variant;
  r.stages = schedule.total_stages;
  r.logic_ops = p.logic.size();
  r.config = p.config;
  auto width_of = [&](const std::string& f) {
    const FieldDecl* d = p.field(f);
    return d ? d->width : 0;
  };
  for (std::size_t i = 0; i < p.tables.size(); ++i) {
    const Table& t = p.tables[i];
    TableReport tr;
    tr.name = t.name;
    tr.match_kind = std::string(match_kind_name(t.kind));
    tr.entries = t.entries.size();
    for (const std::string& k : t.keys) tr.key_bits += width_of(k);
    for (const ActionDef& a : t.actions) {
      int bits = 0;
      for (const std::string& w : a.writes) bits += width_of(w);
      tr.action_bits = std::max(tr.action_bits, bits);
    }
    tr.stage = schedule.stage[i];
    r.total_entries += tr.entries;
    r.max_key_bits = std::max(r.max_key_bits, tr.key_bits);
    r.max_action_bits = std::max(r.max_action_bits, tr.action_bits);
    r.total_action_bits += tr.action_bits;
    r.tables.push_back(std::move(tr));
  }
  for (const RegisterDecl& reg : p.registers)
    r.register_bits += static_cast<std::uint64_t>(reg.width) * reg.values.size();

  if (profile == Profile::kHardware) {
    if (r.stages > limits.max_stages)
      r.warnings.push_back("needs " + std::to_string(r.stages) + " stages, target has " +
                           std::to_string(limits.max_stages));
    std::map<int, int> tables_per_stage;
    std::map<int, std::uint64_t> ternary_per_stage;
    for (const TableReport& t : r.tables) {
      ++tables_per_stage[t.stage];
      if (t.match_kind != "exact") ternary_per_stage[t.stage] += t.entries;
      if (t.entries > limits.max_entries_per_table)
        r.warnings.push_back("table " + t.name + " has " + std::to_string(t.entries) + " entries, limit is " +
                             std::to_string(limits.max_entries_per_table));
      if (t.key_bits > limits.max_key_bits)
        r.warnings.push_back("table " + t.name + " key is " + std::to_string(t.key_bits) + " bits, limit is " +
                             std::to_string(limits.max_key_bits));
      if (t.action_bits > limits.max_action_bits)
        r.warnings.push_back("table " + t.name + " action data is " + std::to_string(t.action_bits) +
                             " bits, limit is " + std::to_string(limits.max_action_bits));
    }
    for (const auto& [stage, count] : tables_per_stage)
      if (count > limits.max_tables_per_stage)
        r.warnings.push_back("stage " + std::to_string(stage) + " holds " + std::to_string(count) +
                             " tables, limit is " + std::to_string(limits.max_tables_per_stage));
    for (const auto& [stage, count] : ternary_per_stage)
      if (count > limits.max_ternary_entries_per_stage)
        r.warnings.push_back("stage " + std::to_string(stage) + " holds " + std::to_string(count) +
                             " ternary entries, limit is " + std::to_string(limits.max_ternary_entries_per_stage));
  }
  return r;
}

std::string report_to_json(const ResourceReport& r, int indent) {
  nlohmann::ordered_json doc;
  doc["program"] = r.program;
  doc["family"] = r.family;
  doc["variant"] = r.variant;
  doc["total_entries"] = r.total_entries;
  doc["stages"] = r.stages;
  doc["max_key_bits"] = r.max_key_bits;
  doc["max_action_bits"] = r.max_action_bits;
  doc["total_action_bits"] = r.total_action_bits;
  doc["register_bits"] = r.register_bits;
  doc["logic_ops"] = r.logic_ops;
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  for (const TableReport& t : r.tables)
    tables.push_back({{"name", t.name},
                      {"match_kind", t.match_kind},
                      {"entries", t.entries},
                      {"key_bits", t.key_bits},
                      {"action_bits", t.action_bits},
                      {"stage", t.stage}});
  doc["tables"] = std::move(tables);
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  doc["config"] = std::move(config);
  doc["warnings"] = r.warnings;
  return doc.dump(indent) + "\n";
}

std::string report_csv_header() {
  return "program,family,variant,tables,total_entries,stages,max_key_bits,max_action_bits,register_bits,"
         "logic_ops,warnings";
}

std::string report_csv_row(const ResourceReport& r) {
  std::ostringstream out;
  out << r.program << ',' << r.family << ',' << r.variant << ',' << r.tables.size() << ',' << r.total_entries
      << ',' << r.stages << ',' << r.max_key_bits << ',' << r.max_action_bits << ',' << r.register_bits << ','
      << r.logic_ops << ',' << r.warnings.size();
  return out.str();
}

}  // namespace tablewright
