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

#include "tablewright/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tablewright/error.hpp"

namespace tablewright {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::uint64_t get_u64(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    fail(path, "expected an unsigned integer");
  return v.get<std::uint64_t>();
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

double get_real(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

const json& get_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

std::vector<std::string> get_strings(const json& v, const std::string& path) {
  std::vector<std::string> out;
  const json& arr = get_array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(get_string(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::uint64_t> get_words(const json& v, const std::string& path) {
  std::vector<std::uint64_t> out;
  const json& arr = get_array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(get_u64(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json parse_document(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

void check_version(const json& doc, const char* what) {
  const int version = get_int(member(doc, "schema_version", what), std::string(what) + ".schema_version");
  if (version != kProgramSchemaVersion)
    fail(std::string(what) + ".schema_version", "unsupported version " + std::to_string(version));
}

ojson key_json(const MatchKey& k, MatchKind kind) {
  ojson j;
  j["value"] = k.value;
  if (kind == MatchKind::kTernary) j["mask"] = k.mask;
  if (kind == MatchKind::kLpm) j["prefix_len"] = k.prefix_len;
  return j;
}

ojson call_json(const Table& t, int action_id, const std::vector<std::uint64_t>& data) {
  ojson j;
  j["action"] = action_id >= 0 && static_cast<std::size_t>(action_id) < t.actions.size()
                    ? t.actions[static_cast<std::size_t>(action_id)].name
                    : std::string();
  j["data"] = data;
  return j;
}

ojson entries_json(const Table& t) {
  ojson arr = ojson::array();
  for (const TableEntry& e : t.entries) {
    ojson j;
    ojson keys = ojson::array();
    for (const MatchKey& k : e.keys) keys.push_back(key_json(k, t.kind));
    j["match"] = std::move(keys);
    if (t.kind == MatchKind::kTernary) j["priority"] = e.priority;
    const ojson call = call_json(t, e.action_id, e.action_data);
    j["action"] = call["action"];
    j["data"] = call["data"];
    arr.push_back(std::move(j));
  }
  return arr;
}

int action_index(const Table& t, const std::string& name, const std::string& path) {
  for (std::size_t i = 0; i < t.actions.size(); ++i)
    if (t.actions[i].name == name) return static_cast<int>(i);
  fail(path, "table " + t.name + " has no action '" + name + "'");
}

ActionCall parse_call(const Table& t, const json& j, const std::string& path) {
  ActionCall call;
  call.action_id = action_index(t, get_string(member(j, "action", path), path + ".action"), path + ".action");
  call.data = get_words(member(j, "data", path), path + ".data");
  return call;
}

std::vector<TableEntry> parse_entries(const Table& t, const json& arr,
                                      const std::string& path) {
  std::vector<TableEntry> out;
  get_array(arr, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string ep = path + "[" + std::to_string(i) + "]";
    const json& j = arr[i];
    TableEntry e;
    const json& match = get_array(member(j, "match", ep), ep + ".match");
    if (match.size() != t.keys.size())
      fail(ep + ".match", "expected " + std::to_string(t.keys.size()) + " key components");
    for (std::size_t k = 0; k < match.size(); ++k) {
      const std::string kp = ep + ".match[" + std::to_string(k) + "]";
      const std::uint64_t value = get_u64(member(match[k], "value", kp), kp + ".value");
      switch (t.kind) {
        case MatchKind::kExact:
          e.keys.push_back(MatchKey::exact(value));
          break;
        // Keys are taken verbatim (no masking) so check_program sees stray bits.
        case MatchKind::kTernary:
          e.keys.push_back({MatchKind::kTernary, value, get_u64(member(match[k], "mask", kp), kp + ".mask"), 0});
          break;
        case MatchKind::kLpm:
          e.keys.push_back({MatchKind::kLpm, value, 0,
                            static_cast<int>(get_int(member(match[k], "prefix_len", kp), kp + ".prefix_len"))});
          break;
      }
    }
    if (t.kind == MatchKind::kTernary) e.priority = get_int(member(j, "priority", ep), ep + ".priority");
    const ActionCall call = parse_call(t, j, ep);
    e.action_id = call.action_id;
    e.action_data = call.data;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::string program_to_json(const PipelineProgram& p, bool include_entries, int indent) {
  ojson doc;
  doc["schema_version"] = kProgramSchemaVersion;
  doc["name"] = p.name;
  doc["family"] = p.family;
  doc["variant"] = p.variant;
  ojson config = ojson::object();
  for (const auto& [k, v] : p.config) config[k] = v;
  doc["config"] = std::move(config);
  ojson fields = ojson::array();
  for (const FieldDecl& f : p.fields) fields.push_back({{"name", f.name}, {"width", f.width}});
  doc["fields"] = std::move(fields);
  doc["inputs"] = p.inputs;
  doc["outputs"] = p.outputs;
  doc["output_kind"] = p.output_kind == OutputKind::kLabel ? "label" : "vector";
  ojson scales = ojson::array();
  for (const OutputScale& s : p.output_scales) scales.push_back({{"scale", s.scale}, {"offset", s.offset}});
  doc["output_scales"] = std::move(scales);
  ojson tables = ojson::array();
  for (const Table& t : p.tables) {
    ojson tj;
    tj["name"] = t.name;
    tj["match_kind"] = std::string(match_kind_name(t.kind));
    tj["keys"] = t.keys;
    ojson actions = ojson::array();
    for (const ActionDef& a : t.actions) actions.push_back({{"name", a.name}, {"writes", a.writes}});
    tj["actions"] = std::move(actions);
    tj["default_action"] = call_json(t, t.default_action.action_id, t.default_action.data);
    if (include_entries) tj["entries"] = entries_json(t);
    tables.push_back(std::move(tj));
  }
  doc["tables"] = std::move(tables);
  ojson logic = ojson::array();
  for (const LogicOp& op : p.logic) {
    ojson oj;
    oj["op"] = std::string(opcode_name(op.op));
    oj["dst"] = op.dst;
    oj["srcs"] = op.srcs;
    oj["imm"] = op.imm;
    if (!op.reg.empty()) oj["reg"] = op.reg;
    logic.push_back(std::move(oj));
  }
  doc["logic"] = std::move(logic);
  ojson regs = ojson::array();
  for (const RegisterDecl& r : p.registers) {
    ojson rj;
    rj["name"] = r.name;
    rj["width"] = r.width;
    rj["size"] = r.values.size();
    if (include_entries) rj["values"] = r.values;
    regs.push_back(std::move(rj));
  }
  doc["registers"] = std::move(regs);
  return doc.dump(indent) + "\n";
}

PipelineProgram program_from_json(std::string_view text) {
  const json doc = parse_document(text, "program");
  const std::string root = "program";
  check_version(doc, "program");
  PipelineProgram p;
  p.name = get_string(member(doc, "name", root), "program.name");
  p.family = get_string(member(doc, "family", root), "program.family");
  p.variant = get_string(member(doc, "variant", root), "program.variant");
  if (auto it = doc.find("config"); it != doc.end()) {
    if (!it->is_object()) fail("program.config", "expected an object");
    // Re-read in document order; json sorts object keys.
    const ojson ordered = ojson::parse(text);
    for (const auto& [key, value] : ordered["config"].items()) {
      if (!value.is_string()) fail("program.config." + key, "expected a string");
      p.config.emplace_back(key, value.get<std::string>());
    }
  }
  const json& fields = get_array(member(doc, "fields", root), "program.fields");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string fp = "program.fields[" + std::to_string(i) + "]";
    p.fields.push_back({get_string(member(fields[i], "name", fp), fp + ".name"),
                        get_int(member(fields[i], "width", fp), fp + ".width")});
  }
  p.inputs = get_strings(member(doc, "inputs", root), "program.inputs");
  p.outputs = get_strings(member(doc, "outputs", root), "program.outputs");
  const std::string kind = get_string(member(doc, "output_kind", root), "program.output_kind");
  if (kind != "label" && kind != "vector") fail("program.output_kind", "expected label or vector");
  p.output_kind = kind == "label" ? OutputKind::kLabel : OutputKind::kVector;
  if (auto it = doc.find("output_scales"); it != doc.end()) {
    get_array(*it, "program.output_scales");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string sp = "program.output_scales[" + std::to_string(i) + "]";
      p.output_scales.push_back({get_real(member((*it)[i], "scale", sp), sp + ".scale"),
                                 get_real(member((*it)[i], "offset", sp), sp + ".offset")});
    }
  }
  const json& tables = get_array(member(doc, "tables", root), "program.tables");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const std::string tp = "program.tables[" + std::to_string(i) + "]";
    const json& tj = tables[i];
    Table t;
    t.name = get_string(member(tj, "name", tp), tp + ".name");
    try {
      t.kind = match_kind_from_name(get_string(member(tj, "match_kind", tp), tp + ".match_kind"));
    } catch (const ValidationError& e) {
      fail(tp + ".match_kind", e.what());
    }
    t.keys = get_strings(member(tj, "keys", tp), tp + ".keys");
    const json& actions = get_array(member(tj, "actions", tp), tp + ".actions");
    for (std::size_t a = 0; a < actions.size(); ++a) {
      const std::string ap = tp + ".actions[" + std::to_string(a) + "]";
      t.actions.push_back({get_string(member(actions[a], "name", ap), ap + ".name"),
                           get_strings(member(actions[a], "writes", ap), ap + ".writes")});
    }
    t.default_action = parse_call(t, member(tj, "default_action", tp), tp + ".default_action");
    p.tables.push_back(std::move(t));
    if (auto it = tj.find("entries"); it != tj.end())
      p.tables.back().entries = parse_entries(p.tables.back(), *it, tp + ".entries");
  }
  const json& logic = get_array(member(doc, "logic", root), "program.logic");
  for (std::size_t i = 0; i < logic.size(); ++i) {
    const std::string lp = "program.logic[" + std::to_string(i) + "]";
    LogicOp op;
    try {
      op.op = opcode_from_name(get_string(member(logic[i], "op", lp), lp + ".op"));
    } catch (const ValidationError& e) {
      fail(lp + ".op", e.what());
    }
    op.dst = get_string(member(logic[i], "dst", lp), lp + ".dst");
    op.srcs = get_strings(member(logic[i], "srcs", lp), lp + ".srcs");
    if (auto it = logic[i].find("imm"); it != logic[i].end()) op.imm = get_u64(*it, lp + ".imm");
    if (auto it = logic[i].find("reg"); it != logic[i].end()) op.reg = get_string(*it, lp + ".reg");
    p.logic.push_back(std::move(op));
  }
  const json& regs = get_array(member(doc, "registers", root), "program.registers");
  for (std::size_t i = 0; i < regs.size(); ++i) {
    const std::string rp = "program.registers[" + std::to_string(i) + "]";
    RegisterDecl r;
    r.name = get_string(member(regs[i], "name", rp), rp + ".name");
    r.width = get_int(member(regs[i], "width", rp), rp + ".width");
    if (auto it = regs[i].find("values"); it != regs[i].end()) {
      r.values = get_words(*it, rp + ".values");
    } else {
      r.values.assign(get_u64(member(regs[i], "size", rp), rp + ".size"), 0);
    }
    p.registers.push_back(std::move(r));
  }
  return p;
}

std::string emit_entries(const PipelineProgram& p, int indent) {
  ojson doc;
  doc["schema_version"] = kProgramSchemaVersion;
  doc["program"] = p.name;
  ojson tables = ojson::array();
  for (const Table& t : p.tables) {
    ojson tj;
    tj["name"] = t.name;
    tj["match_kind"] = std::string(match_kind_name(t.kind));
    tj["default_action"] = call_json(t, t.default_action.action_id, t.default_action.data);
    tj["entries"] = entries_json(t);
    tables.push_back(std::move(tj));
  }
  doc["tables"] = std::move(tables);
  ojson regs = ojson::array();
  for (const RegisterDecl& r : p.registers) regs.push_back({{"name", r.name}, {"values", r.values}});
  doc["registers"] = std::move(regs);
  return doc.dump(indent) + "\n";
}

PipelineProgram apply_entries(PipelineProgram p, std::string_view text) {
  const json doc = parse_document(text, "entries");
  check_version(doc, "entries");
  const json& tables = get_array(member(doc, "tables", "entries"), "entries.tables");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const std::string tp = "entries.tables[" + std::to_string(i) + "]";
    const std::string name = get_string(member(tables[i], "name", tp), tp + ".name");
    Table* t = nullptr;
    for (Table& cand : p.tables)
      if (cand.name == name) t = &cand;
    if (t == nullptr) fail(tp + ".name", "unknown table '" + name + "'");
    t->default_action = parse_call(*t, member(tables[i], "default_action", tp), tp + ".default_action");
    t->entries = parse_entries(*t, member(tables[i], "entries", tp), tp + ".entries");
  }
  if (auto it = doc.find("registers"); it != doc.end()) {
    get_array(*it, "entries.registers");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string rp = "entries.registers[" + std::to_string(i) + "]";
      const std::string name = get_string(member((*it)[i], "name", rp), rp + ".name");
      RegisterDecl* r = nullptr;
      for (RegisterDecl& cand : p.registers)
        if (cand.name == name) r = &cand;
      if (r == nullptr) fail(rp + ".name", "unknown register '" + name + "'");
      r->values = get_words(member((*it)[i], "values", rp), rp + ".values");
    }
  }
  require_valid(p);
  return p;
}

std::string emit_weights(const PipelineProgram& p, int indent) {
  ojson doc;
  doc["schema_version"] = kProgramSchemaVersion;
  doc["program"] = p.name;
  ojson regs = ojson::array();
  for (const RegisterDecl& r : p.registers) {
    ojson rows = ojson::array();
    for (std::uint64_t v : r.values) {
      std::string bits;
      for (int b = r.width - 1; b >= 0; --b) bits.push_back((v >> b) & 1U ? '1' : '0');
      rows.push_back(std::move(bits));
    }
    regs.push_back({{"name", r.name}, {"width", r.width}, {"rows", std::move(rows)}});
  }
  doc["registers"] = std::move(regs);
  return doc.dump(indent) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read \"" + path + "\"");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write \"" + path + "\"");
  out << text;
  if (!out) throw IoError("failed writing \"" + path + "\"");
}

}  // namespace tablewright
